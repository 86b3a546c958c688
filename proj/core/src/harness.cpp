#include "lavgap/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <sstream>

#include <json.hpp>

#include "lavgap/errors.hpp"
#include "lavgap/extended.hpp"

namespace lavgap {

using nlohmann::json;

std::string format_value(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0.0 ? "inf" : "-inf";
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

namespace {

[[noreturn]] void bad(const std::string& msg) { throw config_error(msg); }

void require_object(const json& v, const std::string& where) {
    if (!v.is_object()) bad("'" + where + "' must be a JSON object");
}

void reject_unknown_keys(const json& obj, const std::string& where,
                         std::initializer_list<const char*> allowed) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        bool known = false;
        for (const char* key : allowed)
            if (it.key() == key) {
                known = true;
                break;
            }
        if (!known) bad("unknown key '" + it.key() + "' in " + where);
    }
}

double read_number(const json& obj, const char* key, const std::string& where) {
    const json& v = obj.at(key);
    if (!v.is_number()) bad("'" + where + "." + key + "' must be a number");
    return v.get<double>();
}

int read_int(const json& obj, const char* key, const std::string& where) {
    const json& v = obj.at(key);
    if (!v.is_number_integer()) bad("'" + where + "." + key + "' must be an integer");
    return v.get<int>();
}

std::string read_string(const json& obj, const char* key, const std::string& where) {
    const json& v = obj.at(key);
    if (!v.is_string()) bad("'" + where + "." + key + "' must be a string");
    return v.get<std::string>();
}

// Minimal JSON string escaper for the canonical emitter.
std::string json_quote(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        switch (c) {
        case '"': out += "\\\""; break;
        case '\\': out += "\\\\"; break;
        case '\n': out += "\\n"; break;
        case '\t': out += "\\t"; break;
        case '\r': out += "\\r"; break;
        default:
            if (static_cast<unsigned char>(c) < 0x20) {
                char buf[8];
                std::snprintf(buf, sizeof(buf), "\\u%04x", c);
                out += buf;
            } else {
                out += c;
            }
        }
    }
    out += '"';
    return out;
}

// Number token for hand-assembled JSON: bare when finite, quoted otherwise
// (JSON has no literal for infinities).
std::string json_number(double x) {
    if (std::isfinite(x)) return format_value(x);
    return json_quote(format_value(x));
}

QuadratureOptions quad_options(const RunConfig& config) {
    QuadratureOptions q;
    q.abs_tol = config.quad_tol;
    q.rel_tol = config.quad_tol;
    q.max_depth = config.quad_max_depth;
    return q;
}

} // namespace

RunConfig parse_config(const std::string& json_text) {
    json root;
    try {
        root = json::parse(json_text);
    } catch (const json::parse_error& e) {
        bad(std::string("config is not valid JSON: ") + e.what());
    }
    require_object(root, "config");
    reject_unknown_keys(root, "config",
                        {"problem", "anchor", "nu_schedule", "tuning", "quad", "seed", "outputs"});

    RunConfig c;

    if (!root.contains("problem")) bad("config needs 'problem'");
    const json& prob = root["problem"];
    if (prob.is_string()) {
        c.problem = prob.get<std::string>();
    } else if (prob.is_object()) {
        reject_unknown_keys(prob, "problem", {"name", "params"});
        if (!prob.contains("name")) bad("'problem.name' is required");
        c.problem = read_string(prob, "name", "problem");
        if (prob.contains("params")) {
            require_object(prob["params"], "problem.params");
            for (const auto& [key, value] : prob["params"].items()) {
                if (!value.is_number()) bad("'problem.params." + key + "' must be a number");
                c.params[key] = value.get<double>();
            }
        }
    } else {
        bad("'problem' must be an example name or {name, params}");
    }

    if (!root.contains("anchor")) bad("config needs 'anchor'");
    if (!root["anchor"].is_string()) bad("'anchor' must be a string");
    c.anchor = anchor_from_string(root["anchor"].get<std::string>());

    if (!root.contains("nu_schedule")) bad("config needs 'nu_schedule'");
    const json& sched = root["nu_schedule"];
    require_object(sched, "nu_schedule");
    reject_unknown_keys(sched, "nu_schedule", {"start", "factor", "steps"});
    if (sched.contains("start")) c.schedule.start = read_number(sched, "start", "nu_schedule");
    if (sched.contains("factor")) c.schedule.factor = read_number(sched, "factor", "nu_schedule");
    if (sched.contains("steps")) c.schedule.steps = read_int(sched, "steps", "nu_schedule");
    if (!(c.schedule.start > 0.0) || !std::isfinite(c.schedule.start))
        bad("'nu_schedule.start' must be positive and finite");
    if (!(c.schedule.factor > 1.0) || !std::isfinite(c.schedule.factor))
        bad("'nu_schedule.factor' must be greater than 1");
    if (c.schedule.steps < 1) bad("'nu_schedule.steps' must be at least 1");

    if (root.contains("tuning")) {
        const json& t = root["tuning"];
        require_object(t, "tuning");
        reject_unknown_keys(t, "tuning", {"mu", "lambda_bar", "rho", "dist_kind", "p"});
        if (t.contains("mu")) {
            double mu = read_number(t, "mu", "tuning");
            if (!(mu > 0.0) || !(mu < 1.0)) bad("'tuning.mu' must lie in (0, 1)");
            c.tuning.mu = mu;
        }
        if (t.contains("lambda_bar")) {
            double lb = read_number(t, "lambda_bar", "tuning");
            if (!(lb > 0.0) || !std::isfinite(lb))
                bad("'tuning.lambda_bar' must be positive and finite");
            c.tuning.lambda_bar = lb;
        }
        if (t.contains("rho")) {
            double rho = read_number(t, "rho", "tuning");
            if (!(rho > 0.0) || !std::isfinite(rho)) bad("'tuning.rho' must be positive and finite");
            c.tuning.rho = rho;
        }
        if (t.contains("dist_kind"))
            c.tuning.dist = dist_kind_from_string(read_string(t, "dist_kind", "tuning"));
        if (t.contains("p")) {
            double p = read_number(t, "p", "tuning");
            if (!(p >= 1.0) || !std::isfinite(p)) bad("'tuning.p' must be at least 1");
            c.p = p;
        }
    }

    if (root.contains("quad")) {
        const json& q = root["quad"];
        require_object(q, "quad");
        reject_unknown_keys(q, "quad", {"tol", "max_depth"});
        if (q.contains("tol")) {
            double tol = read_number(q, "tol", "quad");
            if (!(tol > 0.0) || !std::isfinite(tol)) bad("'quad.tol' must be positive and finite");
            c.quad_tol = tol;
        }
        if (q.contains("max_depth")) {
            int depth = read_int(q, "max_depth", "quad");
            if (depth < 1) bad("'quad.max_depth' must be at least 1");
            c.quad_max_depth = depth;
        }
    }

    if (root.contains("seed")) {
        const json& s = root["seed"];
        if (!s.is_number_integer()) bad("'seed' must be a non-negative integer");
        if (!s.is_number_unsigned() && s.get<long long>() < 0)
            bad("'seed' must be a non-negative integer");
        c.seed = s.get<std::uint64_t>();
    }

    if (!root.contains("outputs")) bad("config needs 'outputs'");
    const json& out = root["outputs"];
    require_object(out, "outputs");
    reject_unknown_keys(out, "outputs", {"report_path", "samples_path"});
    if (!out.contains("report_path")) bad("'outputs.report_path' is required");
    c.report_path = read_string(out, "report_path", "outputs");
    if (c.report_path.empty()) bad("'outputs.report_path' must not be empty");
    if (out.contains("samples_path")) {
        std::string sp = read_string(out, "samples_path", "outputs");
        if (sp.empty()) bad("'outputs.samples_path' must not be empty when present");
        c.samples_path = sp;
    }

    // Cross-checks that need the registry: the example must exist (and
    // accept the parameters), and a two-sided plan must have a velocity
    // ceiling from somewhere.
    ProblemSpec spec = get_example(c.problem, c.params);
    if (c.anchor == Anchor::both && !c.tuning.lambda_bar && !spec.analytic.default_lambda_bar)
        bad("anchor 'both' needs 'tuning.lambda_bar': example '" + c.problem +
            "' declares no default velocity ceiling");

    return c;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) bad("cannot open config file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

std::string emit_config(const RunConfig& config) {
    std::ostringstream out;
    out << "{\"problem\":";
    if (config.params.empty()) {
        out << json_quote(config.problem);
    } else {
        out << "{\"name\":" << json_quote(config.problem) << ",\"params\":{";
        bool first = true;
        for (const auto& [key, value] : config.params) {
            if (!first) out << ',';
            first = false;
            out << json_quote(key) << ':' << json_number(value);
        }
        out << "}}";
    }
    out << ",\"anchor\":" << json_quote(to_string(config.anchor));
    out << ",\"nu_schedule\":{\"start\":" << json_number(config.schedule.start)
        << ",\"factor\":" << json_number(config.schedule.factor)
        << ",\"steps\":" << config.schedule.steps << '}';
    out << ",\"tuning\":{";
    bool first = true;
    auto field = [&](const char* key, const std::string& value) {
        if (!first) out << ',';
        first = false;
        out << '"' << key << "\":" << value;
    };
    if (config.tuning.mu) field("mu", json_number(*config.tuning.mu));
    if (config.tuning.lambda_bar) field("lambda_bar", json_number(*config.tuning.lambda_bar));
    if (config.tuning.rho) field("rho", json_number(*config.tuning.rho));
    field("dist_kind", json_quote(to_string(config.tuning.dist)));
    field("p", json_number(config.p));
    out << '}';
    out << ",\"quad\":{\"tol\":" << json_number(config.quad_tol)
        << ",\"max_depth\":" << config.quad_max_depth << '}';
    out << ",\"seed\":" << config.seed;
    out << ",\"outputs\":{\"report_path\":" << json_quote(config.report_path);
    if (config.samples_path) out << ",\"samples_path\":" << json_quote(*config.samples_path);
    out << "}}";
    return out.str();
}

std::vector<HypothesisName> required_hypotheses(Anchor anchor, const Lagrangian& lag) {
    std::vector<HypothesisName> req = {
        HypothesisName::time_regularity,    HypothesisName::radial_convexity,
        HypothesisName::star_shaped_domain, HypothesisName::segment_reachability,
        HypothesisName::bounded_on_window,  HypothesisName::bounded_well_inside,
        HypothesisName::weight_bounded,     HypothesisName::weight_continuous,
    };
    if (anchor == Anchor::both) {
        req.push_back(HypothesisName::weight_positive);
        if (!lag.real_valued) req.push_back(HypothesisName::boundary_blow_up);
    }
    return req;
}

std::vector<CheckOutcome> run_checks(const ProblemSpec& spec, const RunConfig& config) {
    const Lagrangian& lag = spec.lagrangian;
    const Trajectory& y = spec.trajectory;
    QuadratureOptions quad = quad_options(config);

    ProbeBox box = spec.default_box;
    box.seed = config.seed;

    const double len = y.domain.length();
    const double deriv_l1 = lp_norm(y, 1.0, NormTarget::deriv, quad);

    // Velocity ceiling / depth for the informational run of the well-inside
    // check: prefer the config, then the registry, then a safe diagnostic
    // default strictly above the mean-speed floor.
    double lambda_bar = 2.0 * std::max(1.0, deriv_l1 / len);
    if (spec.analytic.default_lambda_bar) lambda_bar = *spec.analytic.default_lambda_bar;
    if (config.tuning.lambda_bar) lambda_bar = *config.tuning.lambda_bar;
    const double rho = config.tuning.rho.value_or(1.0);

    TimeRegularityConstants tr = spec.analytic.time_reg;
    tr.eps_star = len / 2.0;
    tr.K = sup_norm(y) + 1.0;
    tr.p = y.sobolev_p;

    const StructureReport structure = structure_check(lag, box);
    auto from_structure = [](HypothesisName name, const StructureFinding& finding) {
        HypothesisReport rep;
        rep.name = name;
        rep.verdict = finding.verdict;
        rep.witness = finding.witness;
        rep.detail = finding.detail;
        return rep;
    };

    std::vector<CheckOutcome> out;
    auto push = [&out](HypothesisReport rep) {
        CheckOutcome outcome;
        outcome.report = std::move(rep);
        out.push_back(std::move(outcome));
    };

    push(verify_time_regularity(lag, tr, box));
    push(from_structure(HypothesisName::radial_convexity, structure.radially_convex));
    push(from_structure(HypothesisName::star_shaped_domain, structure.star_shaped));
    push(verify_segment_reachability(lag, config.tuning.dist, y.domain, box));
    push(verify_boundedness(lag, y, WindowBound{config.schedule.start}, box));
    push(verify_boundedness(lag, y, WellInsideBound{lambda_bar, rho, config.tuning.dist}, box));
    push(verify_blow_up(lag, y, config.tuning.dist, {1e3, 1e6, 1e9}, box));
    WeightReport weight = verify_weight(lag, y, box);
    push(weight.bounded);
    push(weight.continuous);
    push(weight.positive);
    push(verify_linear_growth(lag, box));
    push(verify_density_integrable(lag, y, quad));

    const std::vector<HypothesisName> req = required_hypotheses(config.anchor, lag);
    for (CheckOutcome& outcome : out)
        outcome.required =
            std::find(req.begin(), req.end(), outcome.report.name) != req.end();
    return out;
}

ConvergenceReport run_study(const ProblemSpec& spec, const RunConfig& config) {
    StudyOptions opt;
    opt.anchor = config.anchor;
    opt.schedule = config.schedule;
    opt.tuning = config.tuning;
    if (config.anchor == Anchor::both && !opt.tuning.lambda_bar)
        opt.tuning.lambda_bar = spec.analytic.default_lambda_bar; // presence checked at parse
    opt.p = config.p;
    opt.quad = quad_options(config);
    opt.base_energy = spec.analytic.base_energy;
    opt.weight_sup = spec.analytic.weight_sup;
    opt.xi_plus = spec.analytic.xi_plus;
    opt.upsilon_minus = spec.analytic.upsilon_minus;
    opt.time_reg = spec.analytic.time_reg;
    return convergence_study(spec.lagrangian, spec.trajectory, opt);
}

HarnessResult evaluate(const RunConfig& config) {
    HarnessResult result;
    result.config = config;
    ProblemSpec spec = get_example(config.problem, config.params);
    result.checks = run_checks(spec, config);
    result.study = run_study(spec, config);
    result.ran_study = true;
    bool falsified_required = false;
    for (const CheckOutcome& outcome : result.checks)
        if (outcome.required && outcome.report.verdict == Verdict::falsified)
            falsified_required = true;
    result.exit_code = falsified_required ? kExitFalsified : kExitOk;
    return result;
}

namespace {

// Status strings travel inside a comma-separated row.
std::string csv_safe(std::string text) {
    std::replace(text.begin(), text.end(), ',', ';');
    std::replace(text.begin(), text.end(), '\n', ' ');
    return text;
}

std::string check_line(const CheckOutcome& outcome) {
    std::ostringstream line;
    line << to_string(outcome.report.name) << ' ' << to_string(outcome.report.verdict) << ' '
         << (outcome.required ? "required" : "info");
    if (outcome.report.statistic) line << " statistic " << format_value(*outcome.report.statistic);
    if (outcome.report.witness) {
        const ProbePoint& w = *outcome.report.witness;
        line << " witness s=" << format_value(w.s);
        line << " z=";
        for (size_t i = 0; i < w.z.size(); ++i) line << (i ? "|" : "") << format_value(w.z[i]);
        line << " v=";
        for (size_t i = 0; i < w.v.size(); ++i) line << (i ? "|" : "") << format_value(w.v[i]);
    }
    if (!outcome.report.detail.empty()) line << " -- " << outcome.report.detail;
    return line.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::filesystem::path p(path);
    if (p.has_parent_path()) {
        std::error_code ec;
        std::filesystem::create_directories(p.parent_path(), ec);
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) bad("cannot open output file '" + path + "'");
    out << content;
    if (!out) bad("failed writing output file '" + path + "'");
}

} // namespace

std::string render_report_csv(const HarnessResult& result) {
    std::ostringstream out;
    out << "# config " << emit_config(result.config) << '\n';
    out << "# base_energy " << format_value(result.study.base_energy) << '\n';
    for (const CheckOutcome& outcome : result.checks)
        out << "# check " << check_line(outcome) << '\n';
    out << "nu,mu,eps_nu,meas_S_nu,F_y_nu,gap,w1p_dist,lip_rank,budget,status\n";
    for (const StudyRow& row : result.study.rows) {
        out << format_value(row.nu) << ',';
        if (row.feasible) {
            out << format_value(row.mu) << ',' << format_value(row.eps) << ','
                << format_value(row.fast_measure) << ',' << format_value(row.energy) << ','
                << format_value(row.gap) << ',' << format_value(row.w1p_dist) << ','
                << format_value(row.lip_rank) << ',';
            if (row.has_budget) out << format_value(row.budget);
            out << ',';
        } else {
            out << ",,,,,,,,";
        }
        out << csv_safe(row.status) << '\n';
    }
    return out.str();
}

std::string render_report_jsonl(const HarnessResult& result) {
    std::ostringstream out;
    out << "{\"config\":" << emit_config(result.config) << "}\n";
    out << "{\"base_energy\":" << json_number(result.study.base_energy) << "}\n";
    for (const CheckOutcome& outcome : result.checks) {
        out << "{\"check\":" << json_quote(to_string(outcome.report.name))
            << ",\"verdict\":" << json_quote(to_string(outcome.report.verdict))
            << ",\"required\":" << (outcome.required ? "true" : "false");
        if (outcome.report.statistic)
            out << ",\"statistic\":" << json_number(*outcome.report.statistic);
        if (!outcome.report.detail.empty())
            out << ",\"detail\":" << json_quote(outcome.report.detail);
        out << "}\n";
    }
    for (const StudyRow& row : result.study.rows) {
        out << "{\"nu\":" << json_number(row.nu);
        auto field = [&](const char* key, double value, bool available) {
            out << ",\"" << key << "\":";
            if (available)
                out << json_number(value);
            else
                out << "null";
        };
        field("mu", row.mu, row.feasible);
        field("eps_nu", row.eps, row.feasible);
        field("meas_S_nu", row.fast_measure, row.feasible);
        field("F_y_nu", row.energy, row.feasible);
        field("gap", row.gap, row.feasible);
        field("w1p_dist", row.w1p_dist, row.feasible);
        field("lip_rank", row.lip_rank, row.feasible);
        field("budget", row.budget, row.feasible && row.has_budget);
        out << ",\"status\":" << json_quote(row.status) << "}\n";
    }
    return out.str();
}

std::string render_samples_csv(const HarnessResult& result, int grid) {
    if (grid < 2) bad("samples grid must have at least 2 cells");
    ProblemSpec spec = get_example(result.config.problem, result.config.params);
    const Trajectory& y = spec.trajectory;
    const size_t dim = y.dim;

    std::vector<const StudyRow*> competitors;
    for (const StudyRow& row : result.study.rows)
        if (row.competitor) competitors.push_back(&row);

    std::ostringstream out;
    auto vec_header = [&](const std::string& base) {
        if (dim == 1) {
            out << ',' << base;
        } else {
            for (size_t i = 0; i < dim; ++i) out << ',' << base << '_' << i;
        }
    };
    out << 's';
    vec_header("y");
    for (size_t k = 0; k < competitors.size(); ++k)
        vec_header("ynu_" + std::to_string(k));
    out << '\n';

    const Interval I = y.domain;
    for (int g = 0; g <= grid; ++g) {
        const double s = (g == grid) ? I.hi : I.lo + (I.hi - I.lo) * g / grid;
        out << format_value(s);
        Vec base = y.value(s);
        for (double c : base) out << ',' << format_value(c);
        for (const StudyRow* row : competitors) {
            Vec v = row->competitor->value(s);
            for (double c : v) out << ',' << format_value(c);
        }
        out << '\n';
    }
    return out.str();
}

void write_reports(const HarnessResult& result, const std::string& format) {
    std::string fmt = format;
    if (fmt.empty()) {
        const std::string& path = result.config.report_path;
        fmt = path.size() >= 6 && path.compare(path.size() - 6, 6, ".jsonl") == 0 ? "jsonl"
                                                                                  : "csv";
    }
    if (fmt != "csv" && fmt != "jsonl") bad("unknown report format '" + fmt + "'");
    write_file(result.config.report_path,
               fmt == "jsonl" ? render_report_jsonl(result) : render_report_csv(result));
    if (result.config.samples_path)
        write_file(*result.config.samples_path, render_samples_csv(result));
}

HarnessResult run(const RunConfig& config) {
    HarnessResult result = evaluate(config);
    write_reports(result);
    return result;
}

} // namespace lavgap
