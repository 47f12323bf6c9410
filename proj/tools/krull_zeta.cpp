// krull-zeta: command-line front end for the factorization / zeta library.
// Exit codes: 0 success, 2 spec or validation error, 3 bound exceeded,
// 64 usage error. Output is byte-identical for identical inputs.

#include <charconv>
#include <clocale>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "krull/cone.hpp"
#include "krull/decay.hpp"
#include "krull/errors.hpp"
#include "krull/factorization.hpp"
#include "krull/numberfield.hpp"
#include "krull/presets.hpp"
#include "krull/zeta.hpp"
#include "verify_suite.hpp"

namespace {

using nlohmann::json;
using namespace krull;

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw spec_error("cannot open spec file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string fmt(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, ptr);
}

enum class OutputMode { Table, Json, Csv };

struct CommonArgs {
    std::string spec_path;
    bool as_json = false;
    bool as_csv = false;
    OutputMode mode() const {
        if (as_json) return OutputMode::Json;
        if (as_csv) return OutputMode::Csv;
        return OutputMode::Table;
    }
};

MonoidElement parse_element(const MonoidSpec& spec, const std::string& text) {
    if (text.find(':') != std::string::npos) {
        std::map<std::int64_t, std::uint64_t> exps;
        std::istringstream ss(text);
        std::string part;
        while (std::getline(ss, part, ',')) {
            auto colon = part.find(':');
            if (colon == std::string::npos)
                throw spec_error("bad exponent entry: " + part);
            exps[std::stoll(part.substr(0, colon))] +=
                std::stoull(part.substr(colon + 1));
        }
        return MonoidElement::exponent_vector(std::move(exps));
    }
    if (text.find(',') != std::string::npos) {
        std::vector<std::int64_t> coords;
        std::istringstream ss(text);
        std::string part;
        while (std::getline(ss, part, ',')) coords.push_back(std::stoll(part));
        return MonoidElement::int_vector(std::move(coords));
    }
    auto value = std::stoull(text);
    if (std::holds_alternative<NumericalMonoidSpec>(spec))
        return MonoidElement::numerical(value);
    if (const auto* pres = std::get_if<KrullPresentation>(&spec);
        pres && pres->integer_family())
        return MonoidElement::natural(value);
    throw spec_error("a bare integer element only fits integer or numerical "
                     "families; use \"a,b,c\" or \"id:exp,...\"");
}

Scale parse_scale(const KrullPresentation& pres, const std::string& text) {
    if (text == "wallis") return wallis_scale(pres);
    if (text.rfind("power:", 0) == 0)
        return power_scale(pres, std::strtod(text.c_str() + 6, nullptr));
    if (text.rfind("decay:", 0) == 0)
        return decay_rate_scale(pres, parse_rat(text.substr(6)));
    if (text.rfind("file:", 0) == 0) {
        json j = json::parse(read_file(text.substr(5)));
        std::map<std::int64_t, ScaleValue> f;
        for (auto& [key, val] : j.items()) {
            ScaleValue sv = val.is_string()
                                ? ScaleValue::from_rat(parse_rat(val.get<std::string>()))
                                : ScaleValue::from_double(val.get<double>());
            f.emplace(std::stoll(key), sv);
        }
        return make_scale(pres, f, "file");
    }
    throw spec_error("unknown scale: " + text +
                     " (expected power:s, decay:c, wallis, or file:PATH)");
}

const KrullPresentation& require_presentation(const MonoidSpec& spec) {
    const auto* pres = std::get_if<KrullPresentation>(&spec);
    if (!pres)
        throw spec_error("this command needs a divisor-theory presentation "
                         "(hilbert, naturals, free, or divisor_theory)");
    return *pres;
}

json element_json(const MonoidSpec& spec, const MonoidElement& e) {
    if (e.kind == ElementKind::Natural || e.kind == ElementKind::NumericalValue)
        return e.value;
    if (e.kind == ElementKind::IntVector) return e.coords;
    if (const auto* pres = std::get_if<KrullPresentation>(&spec);
        pres && pres->integer_family())
        return exponents_to_value(*pres, e.exponents);
    return e.str();
}

void emit_zeta(const ZetaEstimate& est, OutputMode mode) {
    switch (mode) {
        case OutputMode::Json:
            std::cout << zeta_to_json(est) << "\n";
            break;
        case OutputMode::Csv:
            std::cout << zeta_csv_header() << "\n" << zeta_to_csv(est) << "\n";
            break;
        case OutputMode::Table:
            std::cout << "partial_sum  " << fmt(est.partial_sum) << "\n"
                      << "product      " << fmt(est.truncated_product) << "\n"
                      << "lower        " << fmt(est.lower) << "\n"
                      << "upper        "
                      << (est.upper ? fmt(*est.upper) +
                                          (est.upper_conditional ? " (conditional)" : "")
                                    : std::string("-"))
                      << "\n"
                      << "terms        " << est.terms << "\n"
                      << "atoms        " << est.atoms << "\n"
                      << "assumed_tail "
                      << (est.assumed_tail ? fmt(*est.assumed_tail) : std::string("-"))
                      << "\n";
            break;
    }
}

int run_info(const CommonArgs& args) {
    std::string text = read_file(args.spec_path);
    json peek = json::parse(text, nullptr, false);
    if (!peek.is_discarded() && peek.is_object() &&
        peek.value("family", "") == "quadratic_field") {
        auto field = load_field_json(text);
        if (args.mode() == OutputMode::Json) {
            std::cout << field_to_json(field) << "\n";
        } else {
            std::cout << "family        quadratic_field\n"
                      << "d             " << field.d << "\n"
                      << "discriminant  " << field.D << "\n"
                      << "class_number  " << field.class_number << "\n"
                      << "norm_bound    " << field.norm_bound << "\n"
                      << "validated     " << (field.validated ? "yes" : "no") << "\n";
        }
        return 0;
    }
    MonoidSpec spec = load_spec_json(text);
    if (args.mode() == OutputMode::Json) {
        std::cout << spec_to_json(spec) << "\n";
        return 0;
    }
    std::cout << "family  " << family_name(spec) << "\n";
    if (const auto* pres = std::get_if<KrullPresentation>(&spec)) {
        std::cout << "moduli  ";
        for (std::size_t i = 0; i < pres->group.moduli.size(); ++i)
            std::cout << (i ? "," : "") << pres->group.moduli[i];
        std::cout << "\ndivisors  " << pres->divisors.size() << "\n";
        if (pres->bound) std::cout << "bound  " << *pres->bound << "\n";
    } else if (const auto* aff = std::get_if<AffineMonoidSpec>(&spec)) {
        std::cout << "dimension  " << aff->dimension << "\n"
                  << "generators  " << aff->generators.size() << "\n"
                  << "pointed  " << (aff->pointed ? "yes" : "no") << "\n";
    } else if (const auto* num = std::get_if<NumericalMonoidSpec>(&spec)) {
        std::cout << "generators  ";
        for (std::size_t i = 0; i < num->generators.size(); ++i)
            std::cout << (i ? "," : "") << num->generators[i];
        std::cout << "\n";
    }
    return 0;
}

int run_atoms(const CommonArgs& args, std::uint64_t bound, bool strong) {
    MonoidSpec spec = load_spec_json(read_file(args.spec_path));
    std::vector<MonoidElement> elems;
    if (strong) {
        if (const auto* pres = std::get_if<KrullPresentation>(&spec)) {
            for (const auto& atom : strong_atoms_up_to(*pres, bound))
                elems.push_back(pres->integer_family()
                                    ? MonoidElement::natural(*atom.value)
                                    : atom.element);
        } else if (const auto* aff = std::get_if<AffineMonoidSpec>(&spec)) {
            elems = cone::strong_atoms_affine(*aff);
        } else {
            // numerical monoids: report per-atom bounded verdicts instead
            auto pool = atoms_up_to(spec, bound);
            for (const auto& a : pool) {
                auto verdict = is_strong_atom(spec, a, default_power_bound(spec), bound);
                std::cout << a.str() << "  "
                          << (verdict.kind == StrongAtomVerdict::Kind::Refuted
                                  ? "refuted at power " +
                                        std::to_string(verdict.witness->power)
                                  : "unrefuted up to power " +
                                        std::to_string(verdict.power_bound))
                          << "\n";
            }
            return 0;
        }
    } else {
        elems = atoms_up_to(spec, bound);
    }
    if (args.mode() == OutputMode::Json) {
        json out = json::array();
        for (const auto& e : elems) out.push_back(element_json(spec, e));
        std::cout << out.dump() << "\n";
    } else {
        for (const auto& e : elems) std::cout << e.str() << "\n";
    }
    return 0;
}

int run_factorize(const CommonArgs& args, const std::string& element,
                  std::uint64_t bound) {
    MonoidSpec spec = load_spec_json(read_file(args.spec_path));
    MonoidElement x = parse_element(spec, element);
    std::uint64_t atom_bound =
        bound ? bound : static_cast<std::uint64_t>(grading_value(spec, x));
    auto fs = factorizations(spec, x, atom_bound);
    if (args.mode() == OutputMode::Json) {
        json out = json::array();
        for (const auto& m : fs.multisets) {
            json ms = json::array();
            for (auto idx : m) ms.push_back(element_json(spec, fs.atoms[idx]));
            out.push_back(std::move(ms));
        }
        std::cout << out.dump() << "\n";
    } else {
        for (const auto& m : fs.multisets) {
            std::cout << "{";
            for (std::size_t i = 0; i < m.size(); ++i)
                std::cout << (i ? "," : "") << fs.atoms[m[i]].str();
            std::cout << "}\n";
        }
        std::cout << "lengths {";
        bool first = true;
        for (auto l : fs.lengths()) {
            std::cout << (first ? "" : ",") << l;
            first = false;
        }
        std::cout << "}\n";
    }
    return 0;
}

int run_decay(const CommonArgs& args, const std::string& element) {
    MonoidSpec spec = load_spec_json(read_file(args.spec_path));
    const KrullPresentation& pres = require_presentation(spec);
    MonoidElement x = parse_element(spec, element);
    std::cout << decay_to_json(decay(pres, x)) << "\n";
    return 0;
}

int run_zeta(const CommonArgs& args, const std::string& scale_text,
             std::uint64_t terms, std::optional<double> tail) {
    MonoidSpec spec = load_spec_json(read_file(args.spec_path));
    const KrullPresentation& pres = require_presentation(spec);
    Scale scale = parse_scale(pres, scale_text);
    emit_zeta(zeta_partial_sum(pres, scale, terms, tail), args.mode());
    return 0;
}

int run_euler(const CommonArgs& args, const std::string& scale_text,
              std::uint64_t atom_count, std::optional<double> tail) {
    MonoidSpec spec = load_spec_json(read_file(args.spec_path));
    const KrullPresentation& pres = require_presentation(spec);
    Scale scale = parse_scale(pres, scale_text);

    std::vector<std::pair<double, std::int64_t>> atoms;
    for (const auto& d : pres.divisors)
        atoms.emplace_back(scale.at(d.id).approx, d.id);
    std::sort(atoms.begin(), atoms.end());
    if (atom_count > atoms.size())
        throw bound_error("requested " + std::to_string(atom_count) +
                          " atoms but the presentation holds only " +
                          std::to_string(atoms.size()));
    std::vector<double> sigmas;
    for (std::size_t i = 0; i < atom_count; ++i) sigmas.push_back(atoms[i].first);

    ZetaEstimate est;
    est.truncated_product = euler_product_truncated(sigmas);
    est.atoms = atom_count;
    if (tail) {
        est.assumed_tail = *tail;
        auto ub = zeta_upper_bound(est.truncated_product, *tail, false);
        est.upper = ub.value;
        est.upper_conditional = ub.conditional;
    }
    emit_zeta(est, args.mode());
    return 0;
}

int run_dedekind(const CommonArgs& args, const std::string& scale_text,
                 std::uint64_t bound, std::optional<double> tail) {
    auto field = load_field_json(read_file(args.spec_path));
    double s = 2.0;
    if (!scale_text.empty()) {
        if (scale_text.rfind("power:", 0) != 0)
            throw spec_error("dedekind supports the power:s scale only");
        s = std::strtod(scale_text.c_str() + 6, nullptr);
    }
    std::uint64_t X = bound ? bound : field.norm_bound;
    emit_zeta(dedekind_zeta(field, s, X, tail), args.mode());
    if (args.mode() == OutputMode::Table && !field.validated)
        std::cout << "note: field configuration outside the validated set\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    std::setlocale(LC_ALL, "C");
    CLI::App app{"factorization invariants and generalized zeta functions for "
                 "Krull monoids with finite abelian class group"};
    app.require_subcommand(1);
    app.failure_message(CLI::FailureMessage::help);

    CommonArgs args;
    std::string element, scale_text;
    std::uint64_t bound = 0, terms = 1000, atom_count = 100;
    double tail_value = -1;

    auto add_common = [&](CLI::App* cmd, bool needs_spec = true) {
        if (needs_spec)
            cmd->add_option("--spec", args.spec_path, "monoid spec JSON file")
                ->required();
        cmd->add_flag("--json", args.as_json, "emit JSON");
        cmd->add_flag("--csv", args.as_csv, "emit CSV");
    };

    auto* info = app.add_subcommand("info", "describe a spec file");
    add_common(info);

    auto* atoms_cmd = app.add_subcommand("atoms", "atoms up to a bound");
    add_common(atoms_cmd);
    atoms_cmd->add_option("--bound", bound, "grading bound")->required();

    auto* strong_cmd = app.add_subcommand("strong-atoms", "strong atoms up to a bound");
    add_common(strong_cmd);
    strong_cmd->add_option("--bound", bound, "grading bound")->required();

    auto* fact_cmd = app.add_subcommand("factorize", "all factorizations of an element");
    add_common(fact_cmd);
    fact_cmd->add_option("--element", element, "element to factor")->required();
    fact_cmd->add_option("--bound", bound, "atom bound (defaults to the element)");

    auto* decay_cmd = app.add_subcommand("decay", "decay decomposition of an element");
    add_common(decay_cmd);
    decay_cmd->add_option("--element", element, "element to decompose")->required();

    auto* zeta_cmd = app.add_subcommand("zeta", "partial sums and Euler product");
    add_common(zeta_cmd);
    zeta_cmd->add_option("--scale", scale_text, "power:s | decay:c | wallis | file:PATH")
        ->required();
    zeta_cmd->add_option("--terms", terms, "heap term budget");
    zeta_cmd->add_option("--tail", tail_value, "assumed tail sum over omitted atoms");

    auto* euler_cmd = app.add_subcommand("euler", "truncated Euler product");
    add_common(euler_cmd);
    euler_cmd->add_option("--scale", scale_text, "power:s | decay:c | wallis | file:PATH")
        ->required();
    euler_cmd->add_option("--atoms", atom_count, "number of atoms in the product");
    euler_cmd->add_option("--tail", tail_value, "assumed tail sum over omitted atoms");

    auto* dede_cmd = app.add_subcommand("dedekind", "Dedekind zeta for a quadratic field");
    add_common(dede_cmd);
    dede_cmd->add_option("--scale", scale_text, "power:s (default power:2)");
    dede_cmd->add_option("--bound", bound, "norm bound X (default from the config)");
    dede_cmd->add_option("--tail", tail_value, "assumed tail sum over omitted ideals");

    auto* verify_cmd =
        app.add_subcommand("verify", "run the cross-module property suite");
    verify_cmd->add_flag("--json", args.as_json, "emit JSON");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 64;
    }

    try {
        std::optional<double> tail;
        if (tail_value >= 0) tail = tail_value;
        if (info->parsed()) return run_info(args);
        if (atoms_cmd->parsed()) return run_atoms(args, bound, false);
        if (strong_cmd->parsed()) return run_atoms(args, bound, true);
        if (fact_cmd->parsed()) return run_factorize(args, element, bound);
        if (decay_cmd->parsed()) return run_decay(args, element);
        if (zeta_cmd->parsed()) return run_zeta(args, scale_text, terms, tail);
        if (euler_cmd->parsed()) return run_euler(args, scale_text, atom_count, tail);
        if (dede_cmd->parsed()) return run_dedekind(args, scale_text, bound, tail);
        if (verify_cmd->parsed()) return krull::verify::run_suite(std::cout) ? 0 : 1;
    } catch (const bound_error& e) {
        std::cerr << "bound exceeded: " << e.what() << "\n";
        return 3;
    } catch (const spec_error& e) {
        std::cerr << "spec error: " << e.what() << "\n";
        return 2;
    } catch (const krull::error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 64;
}
