#include "krull/presets.hpp"

#include <algorithm>

#include <json.hpp>

#include "krull/primes.hpp"

namespace krull {

namespace {

PrimeDivisor make_divisor(const ClassGroup& group, std::int64_t id, std::string display,
                          GroupElem cls) {
    PrimeDivisor d;
    d.id = id;
    d.display = std::move(display);
    d.order = group.order_of(cls);
    d.cls = std::move(cls);
    return d;
}

void finish(KrullPresentation& pres) {
    std::sort(pres.divisors.begin(), pres.divisors.end(),
              [](const PrimeDivisor& a, const PrimeDivisor& b) { return a.id < b.id; });
    for (std::size_t i = 1; i < pres.divisors.size(); ++i)
        if (pres.divisors[i].id == pres.divisors[i - 1].id)
            throw spec_error("duplicate divisor id " + std::to_string(pres.divisors[i].id));
}

} // namespace

KrullPresentation hilbert_preset(std::uint64_t bound) {
    if (bound < 3) throw spec_error("hilbert preset needs bound >= 3");
    KrullPresentation pres;
    pres.family = PresetFamily::Hilbert;
    pres.group = ClassGroup({2});
    pres.bound = bound;
    for (auto p : primes_up_to(bound)) {
        if (p == 2) continue;
        GroupElem cls{p % 4 == 1 ? 0 : 1};
        pres.divisors.push_back(make_divisor(pres.group, static_cast<std::int64_t>(p),
                                             std::to_string(p), std::move(cls)));
    }
    finish(pres);
    return pres;
}

KrullPresentation naturals_preset(std::uint64_t bound) {
    if (bound < 3) throw spec_error("naturals preset needs bound >= 3");
    KrullPresentation pres;
    pres.family = PresetFamily::Naturals;
    pres.group = ClassGroup({1});
    pres.bound = bound;
    for (auto p : primes_up_to(bound))
        pres.divisors.push_back(make_divisor(pres.group, static_cast<std::int64_t>(p),
                                             std::to_string(p), GroupElem{0}));
    finish(pres);
    return pres;
}

KrullPresentation free_preset(std::uint64_t n) {
    if (n < 1) throw spec_error("free preset needs at least one divisor");
    KrullPresentation pres;
    pres.family = PresetFamily::Free;
    pres.group = ClassGroup({1});
    for (std::uint64_t i = 1; i <= n; ++i)
        pres.divisors.push_back(make_divisor(pres.group, static_cast<std::int64_t>(i),
                                             "e" + std::to_string(i), GroupElem{0}));
    finish(pres);
    return pres;
}

KrullPresentation divisor_theory_preset(
    std::vector<std::int64_t> moduli,
    std::vector<std::pair<std::int64_t, GroupElem>> assignments) {
    KrullPresentation pres;
    pres.family = PresetFamily::DivisorTheory;
    pres.group = ClassGroup(std::move(moduli));
    for (auto& [id, cls] : assignments) {
        if (cls.size() != pres.group.rank())
            throw spec_error("class assignment has wrong number of coordinates");
        for (std::size_t i = 0; i < cls.size(); ++i)
            if (cls[i] < 0 || cls[i] >= pres.group.moduli[i])
                throw spec_error("class assignment out of range for divisor " +
                                 std::to_string(id));
        pres.divisors.push_back(
            make_divisor(pres.group, id, "d" + std::to_string(id), cls));
    }
    finish(pres);
    return pres;
}

namespace {

using nlohmann::json;

std::uint64_t get_u64(const json& j, const char* key) {
    if (!j.contains(key) || !j[key].is_number_integer())
        throw spec_error(std::string("spec field '") + key + "' must be an integer");
    auto v = j[key].get<std::int64_t>();
    if (v < 0) throw spec_error(std::string("spec field '") + key + "' must be >= 0");
    return static_cast<std::uint64_t>(v);
}

} // namespace

MonoidSpec load_spec_json(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw spec_error(std::string("spec is not valid JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("family") || !j["family"].is_string())
        throw spec_error("spec must be a JSON object with a \"family\" string");
    std::string family = j["family"].get<std::string>();

    MonoidSpec spec = [&]() -> MonoidSpec {
        if (family == "hilbert") return hilbert_preset(get_u64(j, "bound"));
        if (family == "naturals") return naturals_preset(get_u64(j, "bound"));
        if (family == "free") return free_preset(get_u64(j, "d"));
        if (family == "divisor_theory") {
            if (!j.contains("moduli") || !j["moduli"].is_array())
                throw spec_error("divisor_theory spec needs a \"moduli\" array");
            std::vector<std::int64_t> moduli;
            for (auto& m : j["moduli"]) moduli.push_back(m.get<std::int64_t>());
            std::vector<std::pair<std::int64_t, GroupElem>> assignments;
            if (!j.contains("divisors") || !j["divisors"].is_array())
                throw spec_error("divisor_theory spec needs a \"divisors\" array");
            for (auto& d : j["divisors"]) {
                GroupElem cls;
                for (auto& c : d.at("class")) cls.push_back(c.get<std::int64_t>());
                assignments.emplace_back(d.at("id").get<std::int64_t>(), std::move(cls));
            }
            return divisor_theory_preset(std::move(moduli), std::move(assignments));
        }
        if (family == "affine") {
            if (!j.contains("generators") || !j["generators"].is_array())
                throw spec_error("affine spec needs a \"generators\" array");
            std::vector<std::vector<std::int64_t>> gens;
            for (auto& g : j["generators"]) {
                std::vector<std::int64_t> v;
                for (auto& c : g) v.push_back(c.get<std::int64_t>());
                gens.push_back(std::move(v));
            }
            auto d = static_cast<int>(get_u64(j, "d"));
            return make_affine_spec(d, std::move(gens));
        }
        if (family == "numerical") {
            if (!j.contains("generators") || !j["generators"].is_array())
                throw spec_error("numerical spec needs a \"generators\" array");
            std::vector<std::uint64_t> gens;
            for (auto& g : j["generators"]) {
                if (g.is_array()) {
                    if (g.size() != 1)
                        throw spec_error("numerical generators must be integers");
                    gens.push_back(g[0].get<std::uint64_t>());
                } else {
                    gens.push_back(g.get<std::uint64_t>());
                }
            }
            return make_numerical_spec(std::move(gens));
        }
        throw spec_error("unknown preset family: " + family);
    }();

    if (j.contains("factor_limit"))
        if (auto* pres = std::get_if<KrullPresentation>(&spec))
            pres->factor_limit = get_u64(j, "factor_limit");
    return spec;
}

std::string family_name(const MonoidSpec& spec) {
    return std::visit(
        [](const auto& s) -> std::string {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, KrullPresentation>) {
                switch (s.family) {
                    case PresetFamily::Hilbert: return "hilbert";
                    case PresetFamily::Naturals: return "naturals";
                    case PresetFamily::Free: return "free";
                    case PresetFamily::DivisorTheory: return "divisor_theory";
                }
                return "divisor_theory";
            } else if constexpr (std::is_same_v<T, AffineMonoidSpec>) {
                return "affine";
            } else {
                return "numerical";
            }
        },
        spec);
}

std::string spec_to_json(const MonoidSpec& spec) {
    json j;
    j["family"] = family_name(spec);
    std::visit(
        [&](const auto& s) {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, KrullPresentation>) {
                if (s.bound) j["bound"] = *s.bound;
                if (s.family == PresetFamily::Free) j["d"] = s.divisors.size();
                if (s.family == PresetFamily::DivisorTheory) {
                    j["moduli"] = s.group.moduli;
                    json divisors = json::array();
                    for (const auto& d : s.divisors)
                        divisors.push_back(json{{"id", d.id}, {"class", d.cls}});
                    j["divisors"] = std::move(divisors);
                }
                j["factor_limit"] = s.factor_limit;
            } else if constexpr (std::is_same_v<T, AffineMonoidSpec>) {
                j["d"] = s.dimension;
                j["generators"] = s.generators;
            } else {
                j["generators"] = s.generators;
            }
        },
        spec);
    return j.dump();
}

} // namespace krull
