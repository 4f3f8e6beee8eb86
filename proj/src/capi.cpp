#include "bhdyn.h"

#include <cstdio>
#include <cstring>
#include <string>

#include "bhdyn/exact_diag.hpp"
#include "bhdyn/experiment.hpp"
#include "bhdyn/revival.hpp"
#include "bhdyn/twosite.hpp"

using namespace bhdyn;

struct bh_model {
    ModelParams params;
};

struct bh_series {
    TrajectorySeries series;
};

namespace {

thread_local std::string g_last_error;

bh_status fail(bh_status code, const std::string& msg) {
    g_last_error = msg;
    return code;
}

// Runs `fn`, translating exceptions to status codes.  ConfigError and
// invalid_argument are usage errors; everything else is a runtime failure.
template <typename Fn>
bh_status guarded(Fn&& fn) {
    try {
        fn();
        return BH_OK;
    } catch (const ConfigError& e) {
        return fail(BH_ERR_USAGE, e.what());
    } catch (const std::invalid_argument& e) {
        return fail(BH_ERR_USAGE, e.what());
    } catch (const std::exception& e) {
        return fail(BH_ERR_RUNTIME, e.what());
    }
}

std::vector<cplx> to_lambda(const double* re, const double* im, int n) {
    std::vector<cplx> out(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) out[i] = cplx(re[i], im ? im[i] : 0.0);
    return out;
}

}  // namespace

extern "C" {

const char* bh_last_error(void) { return g_last_error.c_str(); }

bh_status bh_model_create_two_site(double eps, double u, bh_model** out) {
    if (!out) return fail(BH_ERR_USAGE, "null output pointer");
    return guarded([&] { *out = new bh_model{ModelParams::two_site(eps, u)}; });
}

bh_status bh_model_create_two_site_g(double eps, double g, int n_total, bh_model** out) {
    if (!out) return fail(BH_ERR_USAGE, "null output pointer");
    return guarded([&] { *out = new bh_model{ModelParams::two_site_g(eps, g, n_total)}; });
}

bh_status bh_model_create_single_site(double eps, double u, bh_model** out) {
    if (!out) return fail(BH_ERR_USAGE, "null output pointer");
    return guarded([&] { *out = new bh_model{ModelParams::single_site(eps, u)}; });
}

void bh_model_destroy(bh_model* model) { delete model; }

bh_status bh_evolve_number_state(const bh_model* model, int n_total, const double* lambda_re,
                                 const double* lambda_im, double t_max, double dt,
                                 bh_series** out) {
    if (!model || !lambda_re || !out) return fail(BH_ERR_USAGE, "null argument");
    return guarded([&] {
        InitialState state = InitialState::number(
            to_lambda(lambda_re, lambda_im, model->params.sites), n_total);
        *out = new bh_series{evolve_number_state(model->params, state, TimeGrid{t_max, dt})};
    });
}

bh_status bh_evolve_coherent_state(const bh_model* model, const double* lambda_re,
                                   const double* lambda_im, double t_max, double dt,
                                   bh_series** out) {
    if (!model || !lambda_re || !out) return fail(BH_ERR_USAGE, "null argument");
    return guarded([&] {
        InitialState state =
            InitialState::coherent(to_lambda(lambda_re, lambda_im, model->params.sites));
        *out = new bh_series{evolve_coherent_state(model->params, state, TimeGrid{t_max, dt})};
    });
}

bh_status bh_series_num_points(const bh_series* s, size_t* out) {
    if (!s || !out) return fail(BH_ERR_USAGE, "null argument");
    *out = s->series.times.size();
    return BH_OK;
}

bh_status bh_series_num_columns(const bh_series* s, size_t* out) {
    if (!s || !out) return fail(BH_ERR_USAGE, "null argument");
    *out = s->series.columns().size();
    return BH_OK;
}

bh_status bh_series_column_name(const bh_series* s, size_t index, const char** out) {
    if (!s || !out) return fail(BH_ERR_USAGE, "null argument");
    if (index >= s->series.columns().size())
        return fail(BH_ERR_USAGE, "column index out of range");
    *out = s->series.columns()[index].first.c_str();
    return BH_OK;
}

bh_status bh_series_times(const bh_series* s, const double** out) {
    if (!s || !out) return fail(BH_ERR_USAGE, "null argument");
    *out = s->series.times.data();
    return BH_OK;
}

bh_status bh_series_column(const bh_series* s, const char* name, const double** out) {
    if (!s || !name || !out) return fail(BH_ERR_USAGE, "null argument");
    return guarded([&] { *out = s->series.column(name).data(); });
}

void bh_series_destroy(bh_series* s) { delete s; }

bh_status bh_zero_d_closed_form(double lambda_re, double lambda_im, double eps, double u,
                                double t, double* out_re, double* out_im) {
    if (!out_re || !out_im) return fail(BH_ERR_USAGE, "null output pointer");
    return guarded([&] {
        const cplx a = zero_d_closed_form(cplx(lambda_re, lambda_im), eps, u, t);
        *out_re = a.real();
        *out_im = a.imag();
    });
}

bh_status bh_collapse_envelope(int n_total, double u, double t, double* out) {
    if (!out) return fail(BH_ERR_USAGE, "null output pointer");
    return guarded([&] { *out = collapse_envelope(n_total, u, t); });
}

bh_status bh_classify_regime(double eps, double g, int* out) {
    if (!out) return fail(BH_ERR_USAGE, "null output pointer");
    return guarded([&] {
        switch (classify_regime(eps, g)) {
            case Regime::Oscillatory: *out = 0; break;
            case Regime::SelfTrapped: *out = 1; break;
            case Regime::Critical: *out = 2; break;
        }
    });
}

bh_status bh_run_config(const char* config_path, const char* output_dir) {
    if (!config_path) return fail(BH_ERR_USAGE, "null config path");
    return guarded([&] {
        ExperimentConfig c = ExperimentConfig::from_file(config_path);
        if (output_dir && *output_dir) c.output_dir = output_dir;
        run_experiment(c);
    });
}

bh_status bh_run_preset(const char* name, int full, const char* output_dir) {
    if (!name) return fail(BH_ERR_USAGE, "null preset name");
    return guarded([&] {
        ExperimentConfig c = preset_config(name, full != 0);
        if (output_dir && *output_dir) c.output_dir = output_dir;
        run_experiment(c);
    });
}

bh_status bh_list_presets(char* buf, size_t buflen) {
    if (!buf) return fail(BH_ERR_USAGE, "null buffer");
    std::string joined;
    for (const std::string& n : preset_names()) {
        joined += n;
        joined += '\n';
    }
    if (joined.size() + 1 > buflen) return fail(BH_ERR_USAGE, "buffer too small");
    std::memcpy(buf, joined.c_str(), joined.size() + 1);
    return BH_OK;
}

bh_status bh_verify(int* failures) {
    if (!failures) return fail(BH_ERR_USAGE, "null output pointer");
    return guarded([&] {
        int bad = 0;
        for (const CheckResult& c : verify_suite()) {
            std::printf("%s %s (observed=%.3e, tol=%.3e)\n", c.passed ? "PASS" : "FAIL",
                        c.name.c_str(), c.observed, c.tolerance);
            if (!c.passed) ++bad;
        }
        *failures = bad;
    });
}

}  // extern "C"
