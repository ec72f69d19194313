#include "hiconvex/run.hpp"

#include "hiconvex/divided_differences.hpp"
#include "hiconvex/hh_bounds.hpp"
#include "hiconvex/hornich_hlawka.hpp"
#include "hiconvex/io.hpp"
#include "hiconvex/matrix_ext.hpp"
#include "hiconvex/ordering.hpp"
#include "hiconvex/rng.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <functional>
#include <stdexcept>

namespace hiconvex {

namespace {

nlohmann::json report_envelope(const InequalityReport& report) { return to_json(report); }

nlohmann::json meta_block() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    char stamp[32];
    std::tm tm_utc{};
    gmtime_r(&t, &tm_utc);
    std::strftime(stamp, sizeof(stamp), "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
    return nlohmann::json{{"tool", "hiconvex"}, {"version", "0.1.0"}, {"timestamp", stamp}};
}

Interval resolve_interval(const RunConfig& config, const FunctionModel& model) {
    if (config.lo.has_value() != config.hi.has_value()) {
        throw std::invalid_argument("parse: --interval needs both endpoints");
    }
    if (config.lo.has_value()) return Interval{*config.lo, *config.hi};
    return model.domain();
}

FunctionModel require_model(const RunConfig& config) {
    if (config.model_src.empty()) {
        throw std::invalid_argument("parse: this command needs --model");
    }
    return model_from_json(json_from_arg(config.model_src));
}

WeightSpec resolve_weight(const RunConfig& config, const Interval& iv) {
    if (config.weight == "poly") return weight_poly(iv);
    if (config.weight == "power") {
        const int n = config.k.value_or(1);
        if (std::abs(iv.lo + iv.hi) > 1e-12 * (1.0 + std::abs(iv.hi))) {
            throw std::invalid_argument("weight-spec: power weight needs a symmetric interval");
        }
        return weight_power(n, iv.hi);
    }
    if (config.weight == "cosine") return weight_cosine();
    throw std::invalid_argument("parse: unknown weight '" + config.weight + "'");
}

double effective_tol(const RunConfig& config) { return config.tol.value_or(-1.0); }

// Triple-at-a-time checks accept explicit --points or fall back to a seeded
// sweep; only the worst report is emitted in full, next to a sweep summary.
struct SweepOutcome {
    InequalityReport worst;
    std::vector<double> worst_points;
    long total = 0;
    long held = 0;
};

SweepOutcome sweep_triples(const std::function<InequalityReport(double, double, double)>& check,
                           const std::function<std::vector<double>(Rng&)>& draw,
                           std::uint64_t seed, long trials) {
    SweepOutcome outcome;
    Rng rng(seed);
    bool first = true;
    for (long i = 0; i < trials; ++i) {
        const std::vector<double> p = draw(rng);
        InequalityReport r = check(p[0], p[1], p[2]);
        ++outcome.total;
        if (r.verdict) ++outcome.held;
        if (first || r.margin < outcome.worst.margin) {
            outcome.worst = r;
            outcome.worst_points = p;
            first = false;
        }
    }
    return outcome;
}

int emit(const RunConfig& config, nlohmann::json envelope, bool all_hold, std::ostream& out) {
    envelope["command"] = config.command;
    if (!config.ineq.empty()) envelope["ineq"] = config.ineq;
    envelope["seed"] = config.seed;
    if (!config.no_meta) envelope["meta"] = meta_block();
    const std::string text = envelope.dump(2) + "\n";
    if (!config.out_path.empty()) {
        std::ofstream f(config.out_path);
        if (!f) throw std::invalid_argument("parse: cannot write '" + config.out_path + "'");
        f << text;
    } else {
        out << text;
    }
    return all_hold ? 0 : 1;
}

int run_check(const RunConfig& config, std::ostream& out) {
    if (config.csv_src.empty()) throw std::invalid_argument("parse: check needs --csv");
    const SampleGrid grid = ingest_samples(config.csv_src);
    const ConvexityVerdict v = n_convexity_verdict(grid, config.order, effective_tol(config));
    InequalityReport report;
    report.verdict = v.holds;
    report.margin = v.margin;
    report.lhs = v.margin;
    report.rhs = 0.0;
    report.witness["order"] = v.order;
    report.witness["tol"] = v.tol;
    report.witness["window_begin"] = v.window_begin;
    report.witness["window_xs"] = v.window_xs;
    nlohmann::json envelope;
    envelope["inputs"] = {{"csv", config.csv_src}, {"order", config.order}, {"rows", grid.size()}};
    envelope["report"] = report_envelope(report);
    return emit(config, std::move(envelope), report.verdict, out);
}

int run_order(const RunConfig& config, std::ostream& out) {
    if (config.measure_nu_src.empty() || config.measure_mu_src.empty()) {
        throw std::invalid_argument("parse: order needs --measure-nu and --measure-mu");
    }
    const DiscreteMeasure nu = measure_from_json(json_from_arg(config.measure_nu_src));
    const DiscreteMeasure mu = measure_from_json(json_from_arg(config.measure_mu_src));
    if (!config.lo.has_value() || !config.hi.has_value()) {
        throw std::invalid_argument("parse: order needs --interval");
    }
    const Interval window{*config.lo, *config.hi};
    const OrderVerdict v = precedes_3cvx(nu, mu, window, effective_tol(config));
    InequalityReport report;
    report.verdict = v.holds;
    report.margin = v.min_deficiency;
    report.lhs = v.min_deficiency;
    report.rhs = 0.0;
    report.witness["failing_moment"] = v.failing_moment;
    report.witness["witness_knot"] = v.witness_knot;
    report.witness["tol"] = v.tol;
    for (int k = 0; k <= 2; ++k) {
        report.witness["moments_nu"][static_cast<std::size_t>(k)] = nu.moment(k);
        report.witness["moments_mu"][static_cast<std::size_t>(k)] = mu.moment(k);
    }
    nlohmann::json envelope;
    envelope["inputs"] = {{"nu", measure_to_json(nu)},
                          {"mu", measure_to_json(mu)},
                          {"interval", {window.lo, window.hi}}};
    envelope["report"] = report_envelope(report);
    return emit(config, std::move(envelope), report.verdict, out);
}

int run_falsify(const RunConfig& config, std::ostream& out) {
    if (config.falsify_target != "freudenthal") {
        throw std::invalid_argument("parse: unknown falsify target '" + config.falsify_target + "'");
    }
    const FreudenthalSearchResult r = freudenthal_search(config.seed, config.trials);
    nlohmann::json envelope;
    auto witness_json = [](const FreudenthalWitness& w) {
        nlohmann::json j;
        j["found"] = w.found;
        if (w.found) {
            j["point"] = w.point;
            j["value"] = w.value;
        }
        return j;
    };
    envelope["inputs"] = {{"trials", config.trials}};
    envelope["report"] = {{"positive", witness_json(r.positive)},
                          {"negative", witness_json(r.negative)},
                          {"lattice_points", r.lattice_points},
                          {"random_trials", r.random_trials}};
    return emit(config, std::move(envelope), r.positive.found && r.negative.found, out);
}

std::vector<SymmetricMatrix> parse_matrices(const RunConfig& config) {
    if (config.matrices_src.empty()) {
        throw std::invalid_argument("parse: this command needs --matrices");
    }
    const nlohmann::json arr = json_from_arg(config.matrices_src);
    if (!arr.is_array() || arr.size() != 3) {
        throw std::invalid_argument("parse: --matrices needs a JSON array of exactly three matrices");
    }
    std::vector<SymmetricMatrix> out;
    out.reserve(3);
    for (const auto& j : arr) out.push_back(matrix_from_json(j));
    return out;
}

int run_matrix(const RunConfig& config, std::ostream& out) {
    const FunctionModel model = require_model(config);
    const std::vector<SymmetricMatrix> ms = parse_matrices(config);
    const InequalityReport report =
        matrix_hh_check(model, ms[0], ms[1], ms[2], effective_tol(config));
    nlohmann::json envelope;
    envelope["inputs"] = {{"model", model_to_json(model)},
                          {"matrices", {matrix_to_json(ms[0]), matrix_to_json(ms[1]),
                                        matrix_to_json(ms[2])}}};
    envelope["report"] = report_envelope(report);
    return emit(config, std::move(envelope), report.verdict, out);
}

int run_verify(const RunConfig& config, std::ostream& out) {
    const std::string& ineq = config.ineq;
    if (ineq.empty()) throw std::invalid_argument("parse: verify needs --ineq");
    if (ineq == "matrix") return run_matrix(config, out);

    const bool needs_model = ineq != "rhh" && ineq != "mhh" && ineq != "hha";
    const double tol = effective_tol(config);
    nlohmann::json inputs;

    // Interval-based two-sided bounds.
    if (ineq == "bp" || ineq == "hh" || ineq == "fejer" || ineq == "weighted" ||
        ineq == "nested" || ineq == "slope") {
        const FunctionModel model = require_model(config);
        inputs["model"] = model_to_json(model);
        const Interval iv = resolve_interval(config, model);
        inputs["interval"] = {iv.lo, iv.hi};
        InequalityReport report;
        if (ineq == "bp") {
            report = bp_bounds_check(model, iv, tol);
        } else if (ineq == "hh") {
            if (config.measure_mu_src.empty()) {
                throw std::invalid_argument("parse: --ineq hh needs --measure-mu");
            }
            const DiscreteMeasure mu = measure_from_json(json_from_arg(config.measure_mu_src));
            inputs["mu"] = measure_to_json(mu);
            report = hh_classical_check(model, mu, iv, tol);
        } else if (ineq == "fejer") {
            const WeightSpec spec = resolve_weight(config, iv);
            inputs["weight"] = spec.name;
            report = fejer_check(model, spec.W, iv, tol);
        } else if (ineq == "weighted") {
            const WeightSpec spec = resolve_weight(config, iv);
            inputs["weight"] = spec.name;
            report = weighted_3convex_check(model, spec, iv, tol);
        } else if (ineq == "nested") {
            if (config.epsilon.has_value()) inputs["epsilon"] = *config.epsilon;
            report = nested_mean_checks(model, iv, config.epsilon, tol);
        } else {
            report = slope_bounds_check(model, iv, tol);
        }
        nlohmann::json envelope;
        envelope["inputs"] = inputs;
        envelope["report"] = report_envelope(report);
        return emit(config, std::move(envelope), report.verdict, out);
    }

    // Pointwise checks: explicit points or a seeded sweep.
    std::optional<FunctionModel> model_opt;
    if (needs_model) {
        model_opt = require_model(config);
        inputs["model"] = model_to_json(*model_opt);
    }
    auto draw_box = [](double lo, double hi) {
        return [lo, hi](Rng& rng) {
            return std::vector<double>{rng.uniform(lo, hi), rng.uniform(lo, hi),
                                       rng.uniform(lo, hi)};
        };
    };

    std::function<InequalityReport(double, double, double)> check;
    std::function<std::vector<double>(Rng&)> draw;
    if (ineq == "hh1") {
        const FunctionModel& model = *model_opt;
        const double reach = std::min(model.domain().hi, 9.0);
        check = [&model, tol](double x, double y, double z) {
            return hh_basic_check(model, x, y, z, tol);
        };
        draw = draw_box(0.0, reach / 3.0);
    } else if (ineq == "res") {
        const FunctionModel& model = *model_opt;
        const double reach = std::min(model.domain().hi, 9.0);
        check = [&model, tol](double x, double y, double z) {
            return hh_abs_check(model, x, y, z, tol);
        };
        draw = draw_box(-reach / 3.0, reach / 3.0);
    } else if (ineq == "rhh" || ineq == "mhh" || ineq == "hha") {
        const SpecialForm form = ineq == "rhh"   ? SpecialForm::Rational
                                 : ineq == "mhh" ? SpecialForm::Product
                                                 : SpecialForm::Power;
        const double alpha = config.alpha.value_or(1.0);
        if (ineq != "mhh") inputs["alpha"] = alpha;
        check = [form, alpha, tol](double x, double y, double z) {
            return special_form_check(form, alpha, x, y, z, tol);
        };
        draw = draw_box(-5.0, 5.0);
    } else if (ineq == "va") {
        if (config.points.size() < 3) {
            throw std::invalid_argument("parse: --ineq va needs --points with at least three values");
        }
        if (!config.k.has_value()) throw std::invalid_argument("parse: --ineq va needs --k");
        const InequalityReport report =
            va_generalized_check(*model_opt, config.points, *config.k, tol);
        inputs["points"] = config.points;
        inputs["k"] = *config.k;
        nlohmann::json envelope;
        envelope["inputs"] = inputs;
        envelope["report"] = report_envelope(report);
        return emit(config, std::move(envelope), report.verdict, out);
    } else {
        throw std::invalid_argument("parse: unknown inequality selector '" + ineq + "'");
    }

    nlohmann::json envelope;
    if (!config.points.empty()) {
        if (config.points.size() != 3) {
            throw std::invalid_argument("parse: this check needs exactly three --points values");
        }
        const InequalityReport report =
            check(config.points[0], config.points[1], config.points[2]);
        inputs["points"] = config.points;
        envelope["inputs"] = inputs;
        envelope["report"] = report_envelope(report);
        return emit(config, std::move(envelope), report.verdict, out);
    }
    const SweepOutcome sweep = sweep_triples(check, draw, config.seed, config.trials);
    inputs["trials"] = config.trials;
    envelope["inputs"] = inputs;
    envelope["summary"] = {{"total", sweep.total},
                           {"held", sweep.held},
                           {"min_margin", sweep.worst.margin},
                           {"worst_points", sweep.worst_points}};
    envelope["report"] = report_envelope(sweep.worst);
    return emit(config, std::move(envelope), sweep.held == sweep.total, out);
}

} // namespace

int run(const RunConfig& config, std::ostream& out) {
    if (config.command == "check") return run_check(config, out);
    if (config.command == "verify") return run_verify(config, out);
    if (config.command == "order") return run_order(config, out);
    if (config.command == "falsify") return run_falsify(config, out);
    if (config.command == "matrix") return run_matrix(config, out);
    throw std::invalid_argument("parse: unknown command '" + config.command + "'");
}

} // namespace hiconvex
