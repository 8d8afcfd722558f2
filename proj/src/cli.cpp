#include "levysup/cli.hpp"
#include "levysup/asymptotics.hpp"
#include "levysup/config.hpp"
#include "levysup/convergence.hpp"
#include "levysup/errors.hpp"
#include "levysup/math.hpp"
#include "levysup/pricing.hpp"
#include "levysup/spitzer.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>

namespace levysup {

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitHypothesis = 3;
constexpr int kExitNumerical = 4;
constexpr int kExitAssert = 5;

struct CommonFlags {
    std::string config_path;
    std::string out_path;
    bool as_json = false;
    long paths = 0;      // 0 = from config
    long n = 0;          // 0 = from config
    std::uint64_t seed = 0;
    bool seed_set = false;
    std::string engine;
};

void add_common(CLI::App* cmd, CommonFlags* f, bool config_required) {
    auto* copt = cmd->add_option("--config", f->config_path, "configuration file");
    if (config_required) copt->required();
    cmd->add_option("--out", f->out_path, "output file path");
    cmd->add_flag("--json", f->as_json, "emit JSON on stdout");
    cmd->add_option("--paths", f->paths, "Monte Carlo path count override");
    cmd->add_option("--n", f->n, "monitoring-date count override");
    cmd->add_option("--seed", f->seed, "master seed override")
        ->each([f](const std::string&) { f->seed_set = true; });
    cmd->add_option("--engine", f->engine, "gap engine: spitzer or mc");
}

RunConfig load(const CommonFlags& f) {
    RunConfig cfg = parse_config_file(f.config_path);
    if (f.paths > 0) cfg.paths = f.paths;
    if (f.seed_set) cfg.seed = f.seed;
    if (!f.engine.empty()) {
        if (f.engine != "spitzer" && f.engine != "mc")
            throw ConfigError("--engine must be 'spitzer' or 'mc'");
        cfg.engine = f.engine;
    }
    if (f.n > 0) cfg.option.n = f.n;
    if (!f.out_path.empty()) cfg.out_path = f.out_path;
    return cfg;
}

void write_output(const RunConfig& cfg, const std::string& text) {
    if (cfg.out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(cfg.out_path, std::ios::binary);
    if (!out) throw ConfigError("cannot open output file '" + cfg.out_path + "'");
    out << text;
}

void emit(const CommonFlags& f, const json& j, const std::string& text) {
    if (f.as_json)
        std::cout << j.dump(2) << "\n";
    else
        std::cout << text;
}

std::string f17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

int cmd_zeta(const CommonFlags& f, double s) {
    const double z = riemann_zeta_unit_interval(s);
    const double b1 = beta1();
    json j{{"s", s}, {"zeta", z}, {"beta1", b1}};
    emit(f, j,
         "zeta(" + f17(s) + ") = " + f17(z) + "\nbeta1 = " + f17(b1) + "\n");
    return kExitOk;
}

int cmd_validate(const CommonFlags& f) {
    const RunConfig cfg = load(f);
    const ModelClass cls = classify(cfg.model);
    const bool exp1 = check_exp_moment(cfg.model, 1.0);
    const bool h2 = cfg.model.sigma > 0.0 && cls.finite_activity && cls.integrable;
    const bool h1 = h2 && check_exp_moment(cfg.model, 2.0 + 1e-9);
    json j{{"model", model_id(cfg.model)},
           {"finite_activity", cls.finite_activity},
           {"finite_variation", cls.finite_variation},
           {"has_diffusion", cls.has_diffusion},
           {"positive_jumps", cls.positive_jumps},
           {"integrable", cls.integrable},
           {"sup_integrable", cls.sup_integrable},
           {"x_log_x", cls.x_log_x},
           {"exp_moment_1", exp1},
           {"h2", h2},
           {"h1", h1}};
    std::ostringstream out;
    out << "model = " << model_id(cfg.model) << "\n"
        << "finite_activity = " << cls.finite_activity << "\n"
        << "finite_variation = " << cls.finite_variation << "\n"
        << "has_diffusion = " << cls.has_diffusion << "\n"
        << "positive_jumps = " << cls.positive_jumps << "\n"
        << "integrable = " << cls.integrable << "\n"
        << "sup_integrable = " << cls.sup_integrable << "\n"
        << "x_log_x = " << cls.x_log_x << "\n"
        << "exp_moment_1 = " << exp1 << "\n"
        << "h2 = " << h2 << "\nh1 = " << h1 << "\n";
    emit(f, j, out.str());
    if (cfg.has_option && !exp1) {
        std::cerr << "error: pricing requested but E e^X is infinite\n";
        return kExitHypothesis;
    }
    return kExitOk;
}

int cmd_gap(const CommonFlags& f) {
    RunConfig cfg = load(f);
    const long n = f.n > 0 ? f.n : (cfg.n_list.empty() ? 64 : cfg.n_list.back());
    json j;
    std::ostringstream out;
    if (cfg.engine == "spitzer") {
        const GapValue g = gap_mean(cfg.model, cfg.t, n, cfg.quad);
        j = json{{"n", g.n},
                 {"gap", g.gap},
                 {"error_budget", g.error_budget},
                 {"method", g.method == GapMethod::series ? "series" : "fourier"},
                 {"engine", "spitzer"}};
        out << "n = " << g.n << "\ngap = " << f17(g.gap)
            << "\nerror_budget = " << f17(g.error_budget) << "\nmethod = "
            << (g.method == GapMethod::series ? "series" : "fourier") << "\n";
    } else {
        const McParams mc{cfg.paths, cfg.seed};
        const GapCurve curve =
            run_gap_study(cfg.model, cfg.t, {n}, GapEngine::mc, mc, cfg.quad);
        const GapEntry& e = curve.entries.front();
        j = json{{"n", e.n},
                 {"gap", e.gap},
                 {"gap_se", e.gap_se},
                 {"predicted", e.predicted},
                 {"engine", "mc"},
                 {"seed", cfg.seed},
                 {"paths", cfg.paths}};
        out << "n = " << e.n << "\ngap = " << f17(e.gap)
            << "\ngap_se = " << f17(e.gap_se)
            << "\npredicted = " << f17(e.predicted) << "\n";
    }
    emit(f, j, out.str());
    return kExitOk;
}

int cmd_rate(const CommonFlags& f, bool assert_mode) {
    RunConfig cfg = load(f);
    std::vector<long> n_list = cfg.n_list;
    if (n_list.empty()) n_list = {16, 32, 64, 128, 256, 512, 1024};
    const GapEngine engine =
        cfg.engine == "spitzer" ? GapEngine::spitzer : GapEngine::mc;
    const McParams mc{cfg.paths, cfg.seed};
    const GapCurve curve =
        run_gap_study(cfg.model, cfg.t, n_list, engine, mc, cfg.quad);
    const RateFit fit = fit_rate(curve, true);
    const RatePrediction pred = classify_rate(cfg.model, cfg.t, cfg.quad);
    const VerifyReport rep = verify_prediction(curve, pred);

    if (!cfg.out_path.empty()) write_output(cfg, gap_curve_csv(curve, "rate"));

    const char* order = nullptr;
    switch (pred.order) {
        case RateOrder::inv_sqrt_n: order = "inv_sqrt_n"; break;
        case RateOrder::small_o_inv_sqrt_n: order = "small_o_inv_sqrt_n"; break;
        case RateOrder::log_n_over_n: order = "log_n_over_n"; break;
        case RateOrder::inv_n: order = "inv_n"; break;
    }
    json jc = json::array();
    for (const GapEntry& e : curve.entries)
        jc.push_back({{"n", e.n},
                      {"gap", e.gap},
                      {"gap_se", e.gap_se},
                      {"predicted", e.predicted}});
    json j{{"model", curve.model},
           {"order", order},
           {"source", pred.source},
           {"slope", fit.slope},
           {"log_coef", fit.log_coef},
           {"r2", fit.r2},
           {"pass", rep.pass},
           {"detail", rep.detail},
           {"curve", jc}};
    if (pred.leading_coefficient)
        j["leading_coefficient"] = *pred.leading_coefficient;

    std::ostringstream out;
    out << "model = " << curve.model << "\norder = " << order
        << "\nsource = " << pred.source << "\nslope = " << f17(fit.slope)
        << "\nr2 = " << f17(fit.r2) << "\npass = " << rep.pass
        << "\ndetail = " << rep.detail << "\n";
    emit(f, j, out.str());
    if (assert_mode && !rep.pass) return kExitAssert;
    return kExitOk;
}

int cmd_price(const CommonFlags& f, const std::string& monitoring) {
    RunConfig cfg = load(f);
    if (!cfg.has_option) throw ConfigError("price: config has no option section");
    const LevyModel rn = risk_neutral_drift(cfg.model, cfg.market);
    const McParams mc{cfg.paths, cfg.seed};
    PriceEstimate est;
    if (monitoring == "discrete") {
        est = price_discrete(cfg.option, rn, cfg.market, mc);
    } else if (classify(rn).finite_activity) {
        est = price_continuous(cfg.option, rn, cfg.market, mc);
    } else {
        est = price_continuous_fine(cfg.option, rn, cfg.market, mc);
    }
    json j{{"mean", est.mean},       {"se", est.se},
           {"paths", est.paths},     {"seed", est.seed},
           {"continuous", est.continuous}, {"n", est.n},
           {"bias_bound", est.bias_bound}};
    std::ostringstream out;
    out << "price = " << f17(est.mean) << "\nse = " << f17(est.se)
        << "\npaths = " << est.paths << "\nmonitoring = "
        << (est.continuous ? "continuous" : "discrete") << "\nn = " << est.n
        << "\n";
    if (est.bias_bound > 0.0) out << "bias_bound = " << f17(est.bias_bound) << "\n";
    emit(f, j, out.str());
    return kExitOk;
}

int cmd_correct(const CommonFlags& f) {
    RunConfig cfg = load(f);
    if (!cfg.has_option) throw ConfigError("correct: config has no option section");
    const LevyModel rn = risk_neutral_drift(cfg.model, cfg.market);
    const McParams mc{cfg.paths, cfg.seed};
    const long n = cfg.option.n;
    const bool exact = classify(rn).finite_activity;
    const std::vector<PathExtrema> samples =
        sample_extrema(rn, cfg.market.T, n, mc, exact);

    const auto fn_at = [&](bool continuous) {
        return [&, continuous](double extremum, double strike) {
            OptionSpec shifted = cfg.option;
            shifted.extremum = extremum;
            if (shifted.strike) shifted.strike = strike;
            return price_from_samples(shifted, cfg.market, samples, continuous, mc)
                .mean;
        };
    };
    const PriceEstimate vd =
        price_from_samples(cfg.option, cfg.market, samples, false, mc);
    const PriceEstimate vc =
        price_from_samples(cfg.option, cfg.market, samples, true, mc);
    const CorrectedPrice cd =
        correct_discrete_from_continuous(cfg.option, fn_at(true), cfg.market, rn, n);
    const CorrectedPrice cc =
        correct_continuous_from_discrete(cfg.option, fn_at(false), cfg.market, rn, n);

    json j{{"n", n},
           {"v_discrete", vd.mean},
           {"v_discrete_se", vd.se},
           {"v_continuous", vc.mean},
           {"v_continuous_se", vc.se},
           {"corrected_discrete", cd.value},
           {"corrected_continuous", cc.value},
           {"hypotheses_ok", cd.hypotheses_ok},
           {"note", cd.note}};
    std::ostringstream out;
    out << "n = " << n << "\nv_discrete = " << f17(vd.mean) << " (se "
        << f17(vd.se) << ")\nv_continuous = " << f17(vc.mean) << " (se "
        << f17(vc.se) << ")\ncorrected_discrete = " << f17(cd.value)
        << "\ncorrected_continuous = " << f17(cc.value)
        << "\nhypotheses_ok = " << cd.hypotheses_ok << "\n";
    if (!cd.note.empty()) out << "note = " << cd.note << "\n";
    emit(f, j, out.str());
    return kExitOk;
}

int cmd_study(const CommonFlags& f, bool assert_mode) {
    RunConfig cfg = load(f);
    if (!cfg.has_option) throw ConfigError("study: config has no option section");
    if (cfg.n_list.empty()) throw ConfigError("study: config has no study.n_list");
    const LevyModel rn = risk_neutral_drift(cfg.model, cfg.market);
    const McParams mc{cfg.paths, cfg.seed};
    const CorrectionTable table =
        run_correction_study(cfg.option, rn, cfg.market, cfg.n_list, mc);
    const std::string csv = correction_csv(table);
    write_output(cfg, csv);
    if (f.as_json) {
        json rows = json::array();
        for (const CorrectionRow& r : table.rows)
            rows.push_back({{"n", r.n},
                            {"v_discrete", r.v_discrete},
                            {"v_discrete_se", r.v_discrete_se},
                            {"v_continuous", r.v_continuous},
                            {"v_continuous_se", r.v_continuous_se},
                            {"v_corrected", r.v_corrected},
                            {"raw_err", r.raw_err},
                            {"corr_err", r.corr_err}});
        std::cout << json{{"rows", rows}}.dump(2) << "\n";
    }
    if (assert_mode)
        for (const CorrectionRow& r : table.rows)
            if (r.corr_err >= r.raw_err) return kExitAssert;
    return kExitOk;
}

} // namespace

int run_cli(int argc, char** argv) {
    CLI::App app{"discrete-monitoring gap analysis and continuity corrections "
                 "for exponential Levy models"};
    app.require_subcommand(1);

    CommonFlags fz, fv, fg, fr, fp, fc, fs;
    double zeta_s = 0.5;
    bool rate_assert = false, study_assert = false;
    std::string monitoring = "discrete";

    auto* zeta = app.add_subcommand("zeta", "print zeta(s) on (0,1) and beta1");
    zeta->add_option("--s", zeta_s, "argument in (0,1)");
    add_common(zeta, &fz, false);

    auto* validate =
        app.add_subcommand("validate", "print model class and hypothesis flags");
    add_common(validate, &fv, true);

    auto* gap = app.add_subcommand("gap", "one monitoring-gap value");
    add_common(gap, &fg, true);

    auto* rate =
        app.add_subcommand("rate", "gap curve, rate fit, prediction check");
    rate->add_flag("--assert", rate_assert, "exit 5 when the check fails");
    add_common(rate, &fr, true);

    auto* price = app.add_subcommand("price", "Monte Carlo option price");
    price->add_option("--monitoring", monitoring, "discrete or continuous")
        ->check(CLI::IsMember({"discrete", "continuous"}));
    add_common(price, &fp, true);

    auto* correct =
        app.add_subcommand("correct", "both continuity-correction directions");
    add_common(correct, &fc, true);

    auto* study = app.add_subcommand("study", "correction-efficacy study CSV");
    study->add_flag("--assert", study_assert,
                    "exit 5 unless corrected beats raw at every n");
    add_common(study, &fs, true);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfig;
    }

    try {
        if (zeta->parsed()) return cmd_zeta(fz, zeta_s);
        if (validate->parsed()) return cmd_validate(fv);
        if (gap->parsed()) return cmd_gap(fg);
        if (rate->parsed()) return cmd_rate(fr, rate_assert);
        if (price->parsed()) return cmd_price(fp, monitoring);
        if (correct->parsed()) return cmd_correct(fc);
        if (study->parsed()) return cmd_study(fs, study_assert);
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const MomentFailure& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitHypothesis;
    } catch (const NotIntegrable& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitHypothesis;
    } catch (const UnsupportedClass& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitHypothesis;
    } catch (const QuadratureFailure& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumerical;
    }
    return kExitOk;
}

} // namespace levysup
