// prodiff: command-line front end over the exact library.
//
// Exit codes: 0 ok, 2 usage or parse error, 3 precondition violation,
// 4 internal invariant violation (including a failing verify suite).

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "prodiff/freealg.hpp"
#include "prodiff/json_io.hpp"
#include "prodiff/lie.hpp"
#include "prodiff/norms.hpp"
#include "prodiff/series.hpp"
#include "prodiff/simplex.hpp"
#include "prodiff/triangular.hpp"
#include "prodiff/verify.hpp"

namespace {

using namespace prodiff;
using prodiff::json::Json;

constexpr int kExitUsage = 2;
constexpr int kExitPrecondition = 3;
constexpr int kExitInvariant = 4;

struct Globals {
    std::optional<std::size_t> order;
    std::uint64_t seed = 7;
    std::string output;
    std::string format = "json";
    std::string lp_pivot = "bland";
    bool dump_matrix = false;
};

// Result of a subcommand: either a JSON document or preformatted text (CSV).
struct Output {
    Json doc;
    std::optional<std::string> text;
    int exit_code = 0;
};

void configure_logging()
{
    auto logger = spdlog::stderr_color_mt("prodiff");
    spdlog::set_default_logger(logger);
    spdlog::set_level(spdlog::level::warn);
    if (const char* env = std::getenv("PRODIFF_LOG")) {
        const auto level = spdlog::level::from_str(env);
        // from_str maps unknown names to "off"; only honour it when asked for.
        if (level != spdlog::level::off || std::string(env) == "off") {
            spdlog::set_level(level);
        } else {
            spdlog::warn("PRODIFF_LOG={} is not a log level; keeping warn", env);
        }
    }
}

std::string read_source(const std::string& arg)
{
    if (arg == "-") {
        return std::string(std::istreambuf_iterator<char>(std::cin), {});
    }
    const auto first = arg.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && arg[first] == '{') return arg;
    std::ifstream in(arg);
    if (!in) throw ParseError("cannot open input '" + arg + "' (expected inline JSON, a file path, or -)");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Json load(const std::string& arg)
{
    spdlog::debug("reading input {}", arg.size() > 40 ? arg.substr(0, 40) + "..." : arg);
    return json::parse(read_source(arg));
}

Rational rational_arg(const std::string& text, const char* flag)
{
    try {
        return parse_rational(text);
    } catch (const ParseError& e) {
        throw ParseError(std::string(flag) + ": " + e.what());
    }
}

// A diffeomorphism input brought to --order if given: higher orders are
// truncated, lower orders cannot be extended.
FormalDiffeo diffeo_input(const Json& j, const Globals& g)
{
    FormalDiffeo d = json::diffeo_from_json(j);
    if (!g.order) return d;
    if (*g.order > d.order()) {
        throw PreconditionError("diffeo of order " + std::to_string(d.order()) + " cannot be used at --order " +
                                std::to_string(*g.order));
    }
    return d.truncate_to(*g.order);
}

// Fields are finitely supported, so they pad with zeros.
FormalVectorField field_input(const Json& j, std::optional<std::size_t> order)
{
    FormalVectorField f = json::field_from_json(j);
    if (!order) return f;
    return *order >= f.order() ? f.pad_to(*order) : f.truncate_to(*order);
}

Json with_matrix(Json doc, const TriangularOperator& m)
{
    doc["matrix"] = json::to_json(m);
    return doc;
}

Json diffeo_result(const FormalDiffeo& d, const Globals& g)
{
    Json doc = json::to_json(d);
    return g.dump_matrix ? with_matrix(std::move(doc), rep_T(d, d.order())) : doc;
}

Json field_result(const FormalVectorField& f, const Globals& g)
{
    Json doc = json::to_json(f);
    return g.dump_matrix ? with_matrix(std::move(doc), rep_field(f, f.order() + 1)) : doc;
}

std::string csv_field(const std::string& s)
{
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

std::string to_csv(const std::vector<std::string>& header, const std::vector<std::vector<std::string>>& rows)
{
    std::string out;
    auto line = [&out](const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i > 0) out += ',';
            out += csv_field(cells[i]);
        }
        out += '\n';
    };
    line(header);
    for (const auto& r : rows) line(r);
    return out;
}

std::string fmt_double(double v)
{
    std::ostringstream ss;
    ss.precision(12);
    ss << v;
    return ss.str();
}

Json certificate_json(const QNormResult& q)
{
    Json certs = Json::array();
    for (const auto& c : q.certificates) {
        Json comb = Json::object();
        for (const auto& [w, v] : c.combination) comb[to_string(w)] = to_string(v);
        certs.push_back({{"degree", c.degree}, {"value", to_string(c.value)}, {"combination", std::move(comb)}});
    }
    return certs;
}

// ---------------------------------------------------------------------------

struct QnormOptions {
    std::string input;
    std::string t = "1";
    bool upper = false;
    bool lower = false;
    std::string vt;
    std::size_t columns = 30;
    std::string table;
    std::size_t nmax = 8;
};

Output run_qnorm(const QnormOptions& o, const Globals& g)
{
    const Rational t = rational_arg(o.t, "--t");
    const PivotRule rule = parse_pivot_rule(g.lp_pivot);
    if (!o.table.empty()) {
        if (o.table != "Ln") throw ParseError("--table: only Ln is supported");
        const InclusionReport rep = inclusion_check(t, o.nmax, o.columns);
        Json rows = Json::array();
        for (const auto& r : rep.rows) {
            rows.push_back({{"n", r.n},
                            {"q1", to_string(r.q1)},
                            {"qt", to_string(r.qt)},
                            {"upper", to_string(r.upper)},
                            {"upper_displayed", to_string(r.upper_displayed)},
                            {"lower_vect_t", to_string(r.w_t)},
                            {"lower_vect_2t", to_string(r.w_2t)},
                            {"lower_certificate", to_string(r.lower_certificate)},
                            {"upper_ok", r.upper_ok},
                            {"lower_ok", r.lower_ok},
                            {"contested_lower_ok", r.contested_lower_ok}});
        }
        return {{{"t", to_string(t)}, {"rows", std::move(rows)}, {"violations", rep.violations}}, {}, 0};
    }
    if (o.input.empty()) throw ParseError("qnorm: an input element is required unless --table is given");

    const Json in = load(o.input);
    std::optional<FormalVectorField> field;
    UElement u;
    if (in.is_object() && in.contains("kind")) {
        field = json::field_from_json(in);
        u = UElement::from_field(*field);
    } else {
        u = json::uelement_from_json(in);
    }

    const QNormResult q = qt_norm(u, t, rule);
    Json doc = json::to_json(q.value);
    doc["t"] = to_string(t);
    doc["certificates"] = certificate_json(q);

    if (o.upper) {
        if (!field) {
            std::vector<Rational> coeffs(u.max_degree());
            for (const auto& [d, comp] : u.components()) {
                for (const auto& [m, c] : comp) {
                    if (m.indices().size() != 1) {
                        throw PreconditionError("--upper needs an element of vect (single-index monomials only), got " +
                                                to_string(m));
                    }
                    coeffs[d - 1] = c;
                }
            }
            field = FormalVectorField(u.max_degree(), std::move(coeffs));
        }
        const UpperVectBound ub = q_upper_vect(*field, t);
        doc["upper"] = {{"certified", json::to_json(ub.certified)}, {"as_displayed", to_string(ub.as_displayed)}};
    }
    if (o.lower) {
        const Rational vt = o.vt.empty() ? t : rational_arg(o.vt, "--vt");
        const LowerVectBound lb = q_lower_vect(u, vt, o.columns);
        const QNormResult at_scale = qt_norm(u, lb.scale, rule);
        doc["lower"] = {{"vt", to_string(vt)},
                        {"represented", json::to_json(lb.represented)},
                        {"scale", to_string(lb.scale)},
                        {"q_at_scale", to_string(at_scale.value.value)},
                        {"l1_truncated", json::to_json(lb.l1_truncated)},
                        {"l2_truncated", json::to_json(lb.l2_truncated)},
                        {"contested_scale", to_string(lb.contested_scale)}};
    }
    return {std::move(doc), {}, 0};
}

struct NormOptions {
    std::string input;
    std::string space = "w";
    std::string sigma = "1";
    std::string t = "1";
    std::size_t columns = 20;
    bool finite = false;
    std::string bound;
};

Output run_norm(const NormOptions& o, const Globals& g)
{
    const Json in = load(o.input);
    const auto obj = json::series_from_json(in);
    if (!o.bound.empty()) {
        if (!std::holds_alternative<FormalDiffeo>(obj)) throw PreconditionError("--bound needs a diffeo input");
        const FormalDiffeo gamma = diffeo_input(in, g);
        if (o.bound == "h") {
            const HNormBound h = h_norm_bound(gamma);
            return {{{"computed", json::to_json(h.computed)}, {"bound", json::to_json(h.bound)}}, {}, 0};
        }
        const InversionNormBound inv = inversion_norm_bound(gamma);
        return {{{"partial_s", json::to_json(inv.partial_s)}, {"cap", json::to_json(inv.cap)}}, {}, 0};
    }

    if (o.space == "w") {
        if (!std::holds_alternative<FormalDiffeo>(obj)) throw PreconditionError("--space w needs a diffeo input");
        const FormalDiffeo gamma = diffeo_input(in, g);
        return {json::to_json(w_norm(gamma, rational_arg(o.sigma, "--sigma"), o.finite)), {}, 0};
    }

    const Rational t = rational_arg(o.t, "--t");
    if (const auto* f = std::get_if<FormalVectorField>(&obj)) {
        const FormalVectorField field = g.order ? field_input(in, g.order) : *f;
        const std::size_t top = o.columns + std::max<std::size_t>(field.order(), 1);
        Json doc = json::to_json(operator_norm_trunc(rep_field(field.pad_to(top), top), t, o.columns));
        if (o.space == "vt") {
            const FieldNormBound b = field_norm_bound(field, t);
            doc["lower"] = json::to_json(b.lower);
            doc["upper"] = json::to_json(b.upper);
        }
        return {std::move(doc), {}, 0};
    }
    // Diffeo on V_t: columns of T(gamma) are known through x^N only.
    const FormalDiffeo gamma = diffeo_input(in, g);
    if (o.columns > gamma.order()) {
        throw PreconditionError("--columns " + std::to_string(o.columns) + " exceeds the order " +
                                std::to_string(gamma.order()));
    }
    return {json::to_json(operator_norm_trunc(rep_T(gamma, gamma.order()), t, o.columns)), {}, 0};
}

struct ReportOptions {
    std::string rule = "factorial";
    std::string r = "1";
    std::vector<std::string> list;
    std::vector<std::string> sigmas;
    std::size_t nmax = 8;
    std::string t = "1";
    std::size_t columns = 30;
};

Output run_qtable(const ReportOptions& o, const Globals& g)
{
    const Rational t = rational_arg(o.t, "--t");
    const InclusionReport rep = inclusion_check(t, o.nmax, o.columns);
    const std::vector<std::string> header{"n", "q1", "qt", "upper", "upper_displayed", "lower_vect_t",
                                          "lower_vect_2t", "lower_certificate", "upper_ok", "lower_ok",
                                          "contested_lower_ok"};
    std::vector<std::vector<std::string>> rows;
    for (const auto& r : rep.rows) {
        rows.push_back({std::to_string(r.n), to_string(r.q1), to_string(r.qt), to_string(r.upper),
                        to_string(r.upper_displayed), to_string(r.w_t), to_string(r.w_2t),
                        to_string(r.lower_certificate), r.upper_ok ? "true" : "false", r.lower_ok ? "true" : "false",
                        r.contested_lower_ok ? "true" : "false"});
    }
    if (g.format == "csv") return {Json(), to_csv(header, rows), 0};
    Json jrows = Json::array();
    for (const auto& row : rows) {
        Json jr = Json::object();
        for (std::size_t i = 0; i < header.size(); ++i) {
            if (i == 0) {
                jr[header[i]] = std::stoul(row[i]);
            } else if (i >= 8) {
                jr[header[i]] = row[i] == "true";
            } else {
                jr[header[i]] = row[i];
            }
        }
        jrows.push_back(std::move(jr));
    }
    return {{{"kind", "qtable"}, {"t", to_string(t)}, {"rows", std::move(jrows)}, {"violations", rep.violations}},
            {},
            0};
}

Output run_membership(const ReportOptions& o, const Globals& g)
{
    const CoefficientRule rule = parse_coefficient_rule(o.rule);
    const Rational r = rational_arg(o.r, "--r");
    std::vector<Rational> values;
    for (const auto& v : o.list) values.push_back(rational_arg(v, "--list"));
    std::vector<Rational> grid;
    for (const auto& s : o.sigmas) grid.push_back(rational_arg(s, "--sigma-grid"));
    const std::size_t order = g.order.value_or(12);
    const MembershipReport rep = membership_report(rule, r, order, values, grid);

    if (g.format == "csv") {
        std::vector<std::vector<std::string>> rows;
        for (const auto& row : rep.rows) rows.push_back({"partial_sum", to_string(row.sigma), to_string(row.partial_sum)});
        for (const auto& [j, v] : rep.indicator) rows.push_back({"indicator", std::to_string(j), fmt_double(v)});
        std::string cls = std::string(to_string(rep.classification));
        if (rep.sigma_limit) cls += " sigma<" + fmt_double(*rep.sigma_limit);
        rows.push_back({"classification", "", cls});
        return {Json(), to_csv({"row", "key", "value"}, rows), 0};
    }
    Json rows = Json::array();
    for (const auto& row : rep.rows) {
        rows.push_back({{"sigma", to_string(row.sigma)}, {"partial_sum", to_string(row.partial_sum)}});
    }
    Json ind = Json::array();
    for (const auto& [j, v] : rep.indicator) ind.push_back({{"j", j}, {"value", v}});
    Json doc = {{"kind", "membership"},
                {"rule", std::string(to_string(rep.rule))},
                {"r", to_string(r)},
                {"order", rep.order},
                {"rows", std::move(rows)},
                {"indicator", std::move(ind)},
                {"classification", std::string(to_string(rep.classification))},
                {"diagnostic_only", true}};
    if (rep.sigma_limit) doc["sigma_limit"] = *rep.sigma_limit;
    return {std::move(doc), {}, 0};
}

void emit(const Output& out, const Globals& g)
{
    const std::string text = out.text ? *out.text : out.doc.dump(2) + "\n";
    if (g.output.empty()) {
        std::cout << text;
        std::cout.flush();
        return;
    }
    std::ofstream f(g.output, std::ios::binary);
    if (!f) throw ParseError("cannot write --output '" + g.output + "'");
    f << text;
}

int run(int argc, char** argv)
{
    CLI::App app{"Exact computations with formal diffeomorphisms of the line, formal vector fields and their norms.",
                 "prodiff"};
    app.require_subcommand(1);
    app.fallthrough();

    Globals g;
    app.add_option("--order", g.order, "Truncation order N")->check(CLI::PositiveNumber);
    app.add_option("--seed", g.seed, "Seed for randomized suites");
    app.add_option("--output", g.output, "Write the result to this path instead of stdout");
    app.add_option("--format", g.format, "Output format for report")->check(CLI::IsMember({"json", "csv"}));
    app.add_option("--lp-pivot", g.lp_pivot, "Simplex entering rule")->check(CLI::IsMember({"bland", "dantzig"}));
    app.add_flag("--dump-matrix", g.dump_matrix, "Attach the triangular matrix of the result");

    std::vector<std::string> pair;
    std::string single;
    std::string algorithm;
    std::string sigma = "1";

    auto* compose_cmd = app.add_subcommand("compose", "Group product; T(compose(a, b)) = T(a) T(b), series b(a(x))");
    compose_cmd->add_option("inputs", pair, "Two diffeo objects (inline JSON, path, or -)")->required()->expected(2);

    auto* invert_cmd = app.add_subcommand("invert", "Compositional inverse");
    invert_cmd->add_option("input", single, "Diffeo object")->required();
    invert_cmd->add_option("--algorithm", algorithm, "lagrange or recursive")
        ->check(CLI::IsMember({"lagrange", "recursive"}));

    auto* exp_cmd = app.add_subcommand("exp", "Time-one flow of a vector field");
    exp_cmd->add_option("input", single, "Field object")->required();
    exp_cmd->add_option("--algorithm", algorithm, "matrix or flow")->check(CLI::IsMember({"matrix", "flow"}));

    auto* log_cmd = app.add_subcommand("log", "Vector field whose flow is the given diffeo");
    log_cmd->add_option("input", single, "Diffeo object")->required();

    auto* bch_cmd = app.add_subcommand("bch", "log(exp(A) exp(B)) for two fields");
    bch_cmd->add_option("inputs", pair, "Two field objects")->required()->expected(2);

    auto* scale_cmd = app.add_subcommand("scale", "Apply the scaling automorphism E_sigma");
    scale_cmd->add_option("input", single, "Diffeo or field object")->required();
    scale_cmd->add_option("--sigma", sigma, "Exact rational sigma");

    NormOptions norm_opts;
    auto* norm_cmd = app.add_subcommand("norm", "Weighted norms");
    norm_cmd->add_option("input", norm_opts.input, "Diffeo or field object")->required();
    norm_cmd->add_option("--space", norm_opts.space, "w, vt or op")->check(CLI::IsMember({"w", "vt", "op"}));
    norm_cmd->add_option("--sigma", norm_opts.sigma, "Weight sigma for --space w");
    norm_cmd->add_option("--t", norm_opts.t, "Weight t for V_t");
    norm_cmd->add_option("--columns", norm_opts.columns, "Columns M of the truncated operator norm");
    norm_cmd->add_flag("--finite", norm_opts.finite, "Declare the diffeo finitely supported (w norm is then exact)");
    norm_cmd->add_option("--bound", norm_opts.bound, "h or inversion")->check(CLI::IsMember({"h", "inversion"}));

    QnormOptions q_opts;
    auto* qnorm_cmd = app.add_subcommand("qnorm", "Quotient norm Q_[t] on U(vect) by exact LP");
    qnorm_cmd->add_option("input", q_opts.input, "UElement or field object");
    qnorm_cmd->add_option("--t", q_opts.t, "Scale t");
    qnorm_cmd->add_flag("--upper", q_opts.upper, "Add the upper bound for fields");
    qnorm_cmd->add_flag("--lower", q_opts.lower, "Add the lower bound from V_t");
    qnorm_cmd->add_option("--vt", q_opts.vt, "Weight of V_t for --lower (default --t)");
    qnorm_cmd->add_option("--columns", q_opts.columns, "Columns M for --lower");
    qnorm_cmd->add_option("--table", q_opts.table, "Tabulate a family (Ln)");
    qnorm_cmd->add_option("--nmax", q_opts.nmax, "Largest n for --table")->check(CLI::PositiveNumber);

    VerifyConfig vcfg;
    std::string suite;
    bool inject = false;
    auto* verify_cmd = app.add_subcommand("verify", "Run randomized invariant suites");
    verify_cmd->add_option("suite", suite, "group, operators, norms, freealg or all")
        ->required()
        ->check(CLI::IsMember(suite_names()));
    verify_cmd->add_flag("--inject-fault", inject, "Force one failure to exercise the failure path");

    ReportOptions r_opts;
    auto* report_cmd = app.add_subcommand("report", "Tables for spreadsheets or inspection");
    report_cmd->require_subcommand(1);
    auto* qtable_cmd = report_cmd->add_subcommand("qtable", "Q_[t](L_n) against its bounds");
    qtable_cmd->add_option("--nmax", r_opts.nmax, "Largest n")->check(CLI::PositiveNumber);
    qtable_cmd->add_option("--t", r_opts.t, "Scale t");
    qtable_cmd->add_option("--columns", r_opts.columns, "Columns for the lower certificate");
    auto* member_cmd = report_cmd->add_subcommand("membership", "Root-test diagnostic for W_sigma membership");
    member_cmd->add_option("--rule", r_opts.rule, "geometric, factorial, subfactorial, factorial_squared or list");
    member_cmd->add_option("--r", r_opts.r, "Rule parameter");
    member_cmd->add_option("--list", r_opts.list, "Explicit a_2, a_3, ... for --rule list")->delimiter(',');
    member_cmd->add_option("--sigma-grid", r_opts.sigmas, "Sigmas for partial sums")->delimiter(',');

    if (argc <= 1) {
        std::cerr << app.help();
        return kExitUsage;
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "prodiff: " << e.what() << "\n";
        if (report_cmd->parsed() && report_cmd->get_subcommands().empty()) {
            std::cerr << report_cmd->help();
        } else if (app.get_subcommands().empty()) {
            std::cerr << app.help();
        }
        return kExitUsage;
    }
    if (g.format == "csv" && !report_cmd->parsed()) {
        std::cerr << "prodiff: --format csv is only available for report\n";
        return kExitUsage;
    }

    Output out;
    if (compose_cmd->parsed()) {
        const FormalDiffeo a = diffeo_input(load(pair[0]), g);
        const FormalDiffeo b = diffeo_input(load(pair[1]), g);
        out.doc = diffeo_result(compose(a, b), g);
    } else if (invert_cmd->parsed()) {
        const FormalDiffeo a = diffeo_input(load(single), g);
        out.doc = diffeo_result(algorithm == "recursive" ? invert_recursive(a) : invert_lagrange(a), g);
    } else if (exp_cmd->parsed()) {
        // --order N names the order of the resulting diffeo.
        std::optional<std::size_t> field_order;
        if (g.order) field_order = *g.order - 1;
        const FormalVectorField f = field_input(load(single), field_order);
        out.doc = diffeo_result(algorithm == "flow" ? exp_field_flow(f) : exp_field(f), g);
    } else if (log_cmd->parsed()) {
        out.doc = field_result(log_diffeo(diffeo_input(load(single), g)), g);
    } else if (bch_cmd->parsed()) {
        const Json ja = load(pair[0]), jb = load(pair[1]);
        std::optional<std::size_t> order = g.order;
        if (!order) {
            order = std::max(json::field_from_json(ja).order(), json::field_from_json(jb).order());
        }
        out.doc = field_result(bch(field_input(ja, order), field_input(jb, order)), g);
    } else if (scale_cmd->parsed()) {
        const Json in = load(single);
        const Rational s = rational_arg(sigma, "--sigma");
        if (std::holds_alternative<FormalDiffeo>(json::series_from_json(in))) {
            out.doc = diffeo_result(scale_automorphism(diffeo_input(in, g), s), g);
        } else {
            out.doc = field_result(scale_field(field_input(in, g.order), s), g);
        }
    } else if (norm_cmd->parsed()) {
        out = run_norm(norm_opts, g);
    } else if (qnorm_cmd->parsed()) {
        out = run_qnorm(q_opts, g);
    } else if (verify_cmd->parsed()) {
        vcfg.order = g.order.value_or(12);
        vcfg.seed = g.seed;
        vcfg.inject_fault = inject;
        spdlog::info("verify {} order={} seed={}", suite, vcfg.order, vcfg.seed);
        out.doc = run_suite(suite, vcfg);
        if (!out.doc["passed"].get<bool>()) {
            spdlog::error("verify {}: at least one check failed", suite);
            out.exit_code = kExitInvariant;
        }
    } else if (qtable_cmd->parsed()) {
        out = run_qtable(r_opts, g);
    } else if (member_cmd->parsed()) {
        out = run_membership(r_opts, g);
    }
    emit(out, g);
    return out.exit_code;
}

}  // namespace

int main(int argc, char** argv)
{
    configure_logging();
    try {
        return run(argc, argv);
    } catch (const ParseError& e) {
        std::cerr << "prodiff: parse error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const PreconditionError& e) {
        std::cerr << "prodiff: precondition violated: " << e.what() << "\n";
        return kExitPrecondition;
    } catch (const InvariantError& e) {
        std::cerr << "prodiff: internal invariant violated: " << e.what() << "\n";
        return kExitInvariant;
    } catch (const std::exception& e) {
        std::cerr << "prodiff: internal error: " << e.what() << "\n";
        return kExitInvariant;
    }
}
