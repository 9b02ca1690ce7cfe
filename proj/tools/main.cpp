// mahler: command-line front end for the reciprocal-sum evaluation library.
//
// Commands: radix, eval, eval-number, classify, relations, minpoly, verify.
// Every report embeds the command, the fully resolved configuration, the
// seed, the precision and the library version, and identical inputs produce
// identical output bytes. Exit codes: 0 success, 1 computational failure,
// 2 invalid input.

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "mahler/algebraic.hpp"
#include "mahler/bigcomplex.hpp"
#include "mahler/classify.hpp"
#include "mahler/errors.hpp"
#include "mahler/lattice.hpp"
#include "mahler/lucaspair.hpp"
#include "mahler/periodic.hpp"
#include "mahler/radix.hpp"
#include "mahler/rational.hpp"
#include "mahler/series.hpp"
#include "mahler/verify.hpp"
#include "mahler/version.hpp"

namespace {

using nlohmann::ordered_json;

mahler::PrecisionContext make_ctx(long bits) {
    return mahler::PrecisionContext(bits, std::min(64L, bits / 4));
}

long resolve_bits(long bits_flag) {
    if (bits_flag > 0) return bits_flag;
    return static_cast<long>(mahler::default_context().working_bits);
}

ordered_json base_report(const std::string& command, ordered_json config, long bits,
                         std::uint64_t seed) {
    ordered_json j;
    j["command"] = command;
    j["version"] = mahler::kVersion;
    j["bits"] = bits;
    j["seed"] = seed;
    j["config"] = std::move(config);
    return j;
}

// Accepts either inline JSON (first character '{' or '[') or a file path.
nlohmann::json load_json_arg(const std::string& arg, const char* what) {
    if (!arg.empty() && (arg.front() == '{' || arg.front() == '[')) {
        return nlohmann::json::parse(arg);
    }
    std::ifstream in(arg);
    if (!in) throw mahler::InputError(std::string("cannot open ") + what + " file: " + arg);
    nlohmann::json j;
    in >> j;
    return j;
}

// "re" or "re,im" with rational components.
mahler::BigComplex parse_point(const std::string& s, mpfr_prec_t bits) {
    auto comma = s.find(',');
    mpq_class re = mahler::parse_rational(comma == std::string::npos ? s : s.substr(0, comma));
    mpq_class im = comma == std::string::npos
                       ? mpq_class(0)
                       : mahler::parse_rational(s.substr(comma + 1));
    return mahler::BigComplex::from_mpq(re, im, bits);
}

ordered_json value_json(const mahler::BigComplex& v) {
    ordered_json j;
    j["re"] = v.re().str();
    j["im"] = v.im().str();
    j["err"] = v.err().to_string();
    if (v.err().is_zero())
        j["err_exponent"] = nullptr;
    else
        j["err_exponent"] = v.err().log2_upper();
    return j;
}

// A value entry is an algebraic literal ("7/2", 3, or a tagged object), a
// bare complex-rational {"re": ..., "im": ...}, a function-series sample
// {"series": <spec>, "z": "1/2"}, or a number series
// {"number_series": <spec>, "preset": <name> | "params": <params>}.
mahler::BigComplex value_from_json(const nlohmann::json& j, const mahler::PrecisionContext& ctx) {
    if (j.is_object() && j.contains("series")) {
        mahler::SeriesSpec spec = mahler::SeriesSpec::from_json(j.at("series"));
        mahler::BigComplex z = parse_point(j.at("z").get<std::string>(), ctx.working_bits);
        return mahler::eval_series(spec, z, ctx).value;
    }
    if (j.is_object() && j.contains("number_series")) {
        mahler::LucasPairParams params =
            j.contains("preset")
                ? mahler::LucasPairParams::from_preset(j.at("preset").get<std::string>())
                : mahler::LucasPairParams::from_json(j.at("params"));
        mahler::NumberSeriesSpec spec =
            mahler::NumberSeriesSpec::from_json(j.at("number_series"));
        return mahler::eval_number_series(params, spec, ctx).value;
    }
    if (j.is_object() && j.contains("re") && !j.contains("type")) {
        auto q = [&](const char* k) {
            if (!j.contains(k)) return mpq_class(0);
            const auto& v = j.at(k);
            return v.is_number_integer() ? mpq_class(v.get<long>())
                                         : mahler::parse_rational(v.get<std::string>());
        };
        return mahler::BigComplex::from_mpq(q("re"), q("im"), ctx.working_bits);
    }
    return mahler::embed(mahler::AlgebraicInput::from_json(j), ctx);
}

std::string poly_string(const std::vector<mpz_class>& coeffs) {
    std::string out;
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        if (coeffs[i] == 0) continue;
        mpz_class a = coeffs[i];
        const bool neg = a < 0;
        if (out.empty()) {
            if (neg) out += "-";
        } else {
            out += neg ? " - " : " + ";
        }
        mpz_class mag = abs(a);
        std::string var = i == 0 ? "" : (i == 1 ? "x" : "x^" + std::to_string(i));
        if (mag != 1 || i == 0) {
            out += mag.get_str();
            if (!var.empty()) out += "*";
        }
        out += var;
    }
    return out.empty() ? "0" : out;
}

// ------------------------------------------------------------- output -----

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

std::string scalar_text(const ordered_json& v) {
    return v.is_string() ? v.get<std::string>() : v.dump();
}

bool all_scalars(const ordered_json& arr) {
    return std::all_of(arr.begin(), arr.end(),
                       [](const ordered_json& e) { return !e.is_object() && !e.is_array(); });
}

void flatten(const ordered_json& j, const std::string& prefix,
             std::vector<std::pair<std::string, std::string>>& rows) {
    if (j.is_object()) {
        for (const auto& [k, v] : j.items())
            flatten(v, prefix.empty() ? k : prefix + "." + k, rows);
    } else if (j.is_array() && !all_scalars(j)) {
        for (std::size_t i = 0; i < j.size(); ++i)
            flatten(j.at(i), prefix + "[" + std::to_string(i) + "]", rows);
    } else {
        rows.emplace_back(prefix, scalar_text(j));
    }
}

void emit(const ordered_json& rep, const std::string& format) {
    if (format == "json") {
        std::cout << rep.dump(2) << "\n";
        return;
    }
    std::vector<std::pair<std::string, std::string>> rows;
    flatten(rep, "", rows);
    if (format == "csv") {
        std::cout << "key,value\n";
        for (const auto& [k, v] : rows)
            std::cout << csv_escape(k) << "," << csv_escape(v) << "\n";
    } else {
        for (const auto& [k, v] : rows) std::cout << k << ": " << v << "\n";
    }
}

// ----------------------------------------------------------- commands -----

int cmd_radix(const std::string& n_text, const std::string& format) {
    mpz_class n = mahler::parse_integer(n_text);
    mahler::RadixDecomposition dec = mahler::decompose_radix(n);
    ordered_json rep = base_report("radix", ordered_json{{"n", n_text}}, 0, 0);
    if (dec.d.fits_slong_p())
        rep["d"] = dec.d.get_si();
    else
        rep["d"] = dec.d.get_str();
    rep["j"] = dec.j;
    emit(rep, format);
    return 0;
}

int cmd_eval(const std::string& spec_arg, const std::string& z_text, long bits,
             const std::string& format) {
    mahler::SeriesSpec spec = mahler::SeriesSpec::from_json(load_json_arg(spec_arg, "spec"));
    mahler::PrecisionContext ctx = make_ctx(bits);
    mahler::BigComplex z = parse_point(z_text, ctx.working_bits);
    mahler::EvalResult res = mahler::eval_series(spec, z, ctx);
    ordered_json config;
    config["spec"] = spec.to_json();
    config["z"] = z_text;
    ordered_json rep = base_report("eval", std::move(config), bits, 0);
    rep["value"] = value_json(res.value);
    rep["terms_used"] = res.terms_used;
    rep["truncation"] = res.truncation_bound.to_string();
    emit(rep, format);
    return 0;
}

int cmd_eval_number(const std::string& preset, const std::string& params_arg,
                    const std::string& family, long k, long r, long ell, long mu,
                    const std::string& coeffs_arg, long start, long bits,
                    const std::string& format) {
    mahler::LucasPairParams params =
        params_arg.empty()
            ? mahler::LucasPairParams::from_preset(preset)
            : mahler::LucasPairParams::from_json(load_json_arg(params_arg, "params"));
    mahler::NumberSeriesSpec spec;
    // F and L are aliases for the first and second sequence of the pair.
    std::string fam = family;
    if (fam == "F") fam = "R";
    if (fam == "L") fam = "S";
    spec.family = mahler::family_from_name(fam);
    spec.k = k;
    spec.r = r;
    spec.ell = ell;
    spec.mu = mu;
    spec.coeffs = mahler::PeriodicSeq::from_json(load_json_arg(coeffs_arg, "coeffs"));
    spec.start_index = start;
    mahler::PrecisionContext ctx = make_ctx(bits);
    mahler::NumberEvalResult res = mahler::eval_number_series(params, spec, ctx);
    ordered_json config;
    config["params"] = params.to_json();
    config["spec"] = spec.to_json();
    ordered_json rep = base_report("eval-number", std::move(config), bits, 0);
    rep["value"] = value_json(res.value);
    rep["terms"] = res.terms_used;
    rep["skipped_terms"] = res.skipped_terms;
    rep["truncation"] = res.truncation_bound.to_string();
    emit(rep, format);
    return 0;
}

int cmd_classify(const std::string& preset, const std::string& params_arg,
                 const std::string& b_arg, const std::string& c_arg, long bound, long bits,
                 const std::string& format) {
    mahler::LucasPairParams params =
        params_arg.empty()
            ? mahler::LucasPairParams::from_preset(preset)
            : mahler::LucasPairParams::from_json(load_json_arg(params_arg, "params"));
    mahler::PeriodicSeq b = mahler::PeriodicSeq::from_json(load_json_arg(b_arg, "b"));
    mahler::PeriodicSeq c = mahler::PeriodicSeq::from_json(load_json_arg(c_arg, "c"));
    mahler::PrecisionContext ctx = make_ctx(bits);
    mahler::CaseReport report = mahler::classify_thm2(params, b, c, bound, ctx);
    ordered_json config;
    config["params"] = params.to_json();
    config["b"] = b.to_json();
    config["c"] = c.to_json();
    config["bound"] = bound;
    ordered_json rep = base_report("classify", std::move(config), bits, 0);
    rep.update(report.to_json());
    emit(rep, format);
    return 0;
}

int cmd_relations(const std::string& values_arg, const std::string& height_text, long bits,
                  const std::string& format) {
    nlohmann::json vals = load_json_arg(values_arg, "values");
    if (!vals.is_array() || vals.empty())
        throw mahler::InputError("values must be a nonempty JSON array");
    mahler::PrecisionContext ctx = make_ctx(bits);
    std::vector<mahler::BigComplex> xs;
    for (const auto& v : vals) xs.push_back(value_from_json(v, ctx));
    mpz_class height = mahler::parse_integer(height_text);
    mahler::RelationReport report = mahler::find_integer_relation(xs, height, ctx);
    ordered_json config;
    config["values"] = vals;
    config["height"] = height.get_str();
    ordered_json rep = base_report("relations", std::move(config), bits, 0);
    rep.update(report.to_json());
    emit(rep, format);
    return 0;
}

int cmd_minpoly(const std::string& value_arg, long maxdeg, const std::string& height_text,
                long bits, const std::string& format) {
    nlohmann::json vj = load_json_arg(value_arg, "value");
    mahler::PrecisionContext ctx = make_ctx(bits);
    mahler::BigComplex x = value_from_json(vj, ctx);
    mpz_class height = mahler::parse_integer(height_text);
    auto poly = mahler::minimal_polynomial(x, maxdeg, height, ctx);
    ordered_json config;
    config["value"] = vj;
    config["maxdeg"] = maxdeg;
    config["height"] = height.get_str();
    ordered_json rep = base_report("minpoly", std::move(config), bits, 0);
    rep["found"] = poly.has_value();
    if (poly) {
        auto arr = ordered_json::array();
        for (const mpz_class& cc : *poly) arr.push_back(cc.get_str());
        rep["coefficients"] = std::move(arr);
        rep["degree"] = poly->size() - 1;
        rep["polynomial"] = poly_string(*poly);
    } else {
        rep["coefficients"] = nullptr;
    }
    emit(rep, format);
    return 0;
}

int cmd_verify(const std::string& suite, std::uint64_t seed, long bits,
               const std::string& format) {
    mahler::SuiteReport report = mahler::run_suite(suite, seed, bits);
    ordered_json config;
    config["suite"] = suite;
    ordered_json rep = base_report("verify", std::move(config), report.bits, seed);
    rep.update(report.to_json());
    emit(rep, format);
    return report.passed() ? 0 : 1;
}

void error_out(const char* type, const std::string& what) {
    ordered_json j;
    j["error"] = ordered_json{{"type", type}, {"what", what}};
    std::cerr << j.dump() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Rigorous evaluation, classification and relation search for "
                 "reciprocal-sum constants of Lucas-type sequences"};
    app.require_subcommand(1);
    app.set_version_flag("--version", mahler::kVersion);

    std::string format = "json";
    app.add_option("--format", format, "Output format")
        ->check(CLI::IsMember({"json", "csv", "text"}))
        ->capture_default_str();

    // radix
    auto* sub_radix = app.add_subcommand("radix", "Decompose a radix as d^j with d no perfect power");
    std::string radix_n;
    sub_radix->add_option("n", radix_n, "Integer to decompose (>= 2)")->required();

    // eval
    auto* sub_eval = app.add_subcommand("eval", "Evaluate a lacunary series at a point");
    std::string eval_spec, eval_z = "1/2";
    long eval_bits = 0;
    sub_eval->add_option("--spec", eval_spec, "Series spec: JSON file path or inline JSON")
        ->required();
    sub_eval->add_option("--z", eval_z, "Evaluation point, rational \"re\" or \"re,im\"");
    sub_eval->add_option("--bits", eval_bits, "Working precision (default MAHLER_DEFAULT_BITS or 256)");

    // eval-number
    auto* sub_evnum = app.add_subcommand("eval-number", "Evaluate a reciprocal number series");
    std::string en_preset = "fibonacci-lucas", en_params, en_family = "F", en_coeffs = "[1]";
    long en_k = 1, en_r = 2, en_ell = 0, en_mu = 1, en_start = 0, en_bits = 0;
    sub_evnum->add_option("--preset", en_preset, "Parameter preset")
        ->check(CLI::IsMember(mahler::LucasPairParams::preset_names()))
        ->capture_default_str();
    sub_evnum->add_option("--params", en_params, "Explicit parameters: JSON file path or inline JSON");
    sub_evnum->add_option("--family", en_family, "Series family: F/R (first sequence), L/S (second), Q (plain lacunary)")
        ->check(CLI::IsMember({"F", "L", "Q", "R", "S"}))
        ->capture_default_str();
    sub_evnum->add_option("--k", en_k)->capture_default_str();
    sub_evnum->add_option("--r", en_r)->capture_default_str();
    sub_evnum->add_option("--ell", en_ell)->capture_default_str();
    sub_evnum->add_option("--mu", en_mu, "Exponent multiplier (Q family)")->capture_default_str();
    sub_evnum->add_option("--coeffs", en_coeffs, "Periodic coefficients as a JSON array")
        ->capture_default_str();
    sub_evnum->add_option("--start", en_start, "First summation index")->capture_default_str();
    sub_evnum->add_option("--bits", en_bits, "Working precision");

    // classify
    auto* sub_classify = app.add_subcommand("classify", "Exceptional-index classification for a sequence pair");
    std::string cl_preset = "fibonacci-lucas", cl_params, cl_b = "[1]", cl_c = "[1]";
    long cl_bound = 64, cl_bits = 0;
    sub_classify->add_option("--preset", cl_preset, "Parameter preset")
        ->check(CLI::IsMember(mahler::LucasPairParams::preset_names()))
        ->capture_default_str();
    sub_classify->add_option("--params", cl_params, "Explicit parameters: JSON file path or inline JSON");
    sub_classify->add_option("--b", cl_b, "First coefficient stream (JSON array)")->capture_default_str();
    sub_classify->add_option("--c", cl_c, "Second coefficient stream (JSON array)")->capture_default_str();
    sub_classify->add_option("--bound", cl_bound, "Index search bound")->capture_default_str();
    sub_classify->add_option("--bits", cl_bits, "Working precision");

    // relations
    auto* sub_rel = app.add_subcommand("relations", "Search an integer relation among values");
    std::string rel_values, rel_height = "1048576";
    long rel_bits = 0;
    sub_rel->add_option("--values", rel_values, "Value list: JSON file path or inline JSON array")
        ->required();
    sub_rel->add_option("--height", rel_height, "Coefficient height bound")->capture_default_str();
    sub_rel->add_option("--bits", rel_bits, "Working precision");

    // minpoly
    auto* sub_minpoly = app.add_subcommand("minpoly", "Search the minimal polynomial of a value");
    std::string mp_value, mp_height = "1048576";
    long mp_maxdeg = 8, mp_bits = 0;
    sub_minpoly->add_option("--value", mp_value, "Value: JSON file path or inline JSON")->required();
    sub_minpoly->add_option("--maxdeg", mp_maxdeg, "Maximum degree")->capture_default_str();
    sub_minpoly->add_option("--height", mp_height, "Coefficient height bound")->capture_default_str();
    sub_minpoly->add_option("--bits", mp_bits, "Working precision");

    // verify
    auto* sub_verify = app.add_subcommand("verify", "Run a bundled verification suite");
    std::string vf_suite;
    std::uint64_t vf_seed = 1;
    long vf_bits = 0;
    sub_verify->add_option("--suite", vf_suite, "Suite name")
        ->check(CLI::IsMember(mahler::suite_names()))
        ->required();
    sub_verify->add_option("--seed", vf_seed, "Seed for randomized sample points")
        ->capture_default_str();
    sub_verify->add_option("--bits", vf_bits, "Working precision (0 = suite default)");

    // Let global options (--format) appear after the subcommand name too.
    for (auto* s : {sub_radix, sub_eval, sub_evnum, sub_classify, sub_rel, sub_minpoly,
                    sub_verify})
        s->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (sub_radix->parsed()) return cmd_radix(radix_n, format);
        if (sub_eval->parsed())
            return cmd_eval(eval_spec, eval_z, resolve_bits(eval_bits), format);
        if (sub_evnum->parsed())
            return cmd_eval_number(en_preset, en_params, en_family, en_k, en_r, en_ell, en_mu,
                                   en_coeffs, en_start, resolve_bits(en_bits), format);
        if (sub_classify->parsed())
            return cmd_classify(cl_preset, cl_params, cl_b, cl_c, cl_bound,
                                resolve_bits(cl_bits), format);
        if (sub_rel->parsed())
            return cmd_relations(rel_values, rel_height, resolve_bits(rel_bits), format);
        if (sub_minpoly->parsed())
            return cmd_minpoly(mp_value, mp_maxdeg, mp_height, resolve_bits(mp_bits), format);
        if (sub_verify->parsed()) return cmd_verify(vf_suite, vf_seed, vf_bits, format);
    } catch (const mahler::InputError& e) {
        error_out("input", e.what());
        return 2;
    } catch (const nlohmann::json::exception& e) {
        error_out("input", e.what());
        return 2;
    } catch (const mahler::ComputeError& e) {
        error_out("compute", e.what());
        return 1;
    } catch (const std::exception& e) {
        error_out("internal", e.what());
        return 1;
    }
    return 2;
}
