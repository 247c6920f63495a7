#include "bergman/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <stdexcept>
#include <vector>

namespace bergman {

namespace {

// 15-point Kronrod nodes (positive half) with the embedded 7-point Gauss rule
// at the odd indices.  Constants from the usual QUADPACK tables.
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
};

constexpr double kWgk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
};

constexpr double kWg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
};

// Panels narrower than this fraction of their segment are parked rather than
// bisected further; their error stays in the total.
constexpr double kWidthFloor = 1e-60;

// Diverges / converges decision band on the fitted increment slope.
constexpr double kSlopeThreshold = 0.05;

struct PanelEval {
    double value = 0.0;
    double error = 0.0;
};

// One G7K15 application with the QUADPACK error estimate.  NaN from the
// mapped integrand is rejected; infinities are allowed through and poison the
// panel (its error becomes infinite, so the run cannot converge).
PanelEval gk15(const Integrand& g, double a, double b) {
    const double center = 0.5 * (a + b);
    const double hlgth = 0.5 * (b - a);

    auto eval = [&g](double x) {
        double y = g(x);
        if (std::isnan(y)) {
            throw NonFiniteIntegrand("integrand evaluated to NaN at x = " + std::to_string(x));
        }
        return y;
    };

    const double fc = eval(center);
    double resg = kWg[3] * fc;
    double resk = kWgk[7] * fc;
    double resabs = kWgk[7] * std::fabs(fc);

    double fv1[7];
    double fv2[7];
    for (int j = 0; j < 7; ++j) {
        const double absc = hlgth * kXgk[j];
        fv1[j] = eval(center - absc);
        fv2[j] = eval(center + absc);
        const double fsum = fv1[j] + fv2[j];
        resk += kWgk[j] * fsum;
        resabs += kWgk[j] * (std::fabs(fv1[j]) + std::fabs(fv2[j]));
        if (j % 2 == 1) resg += kWg[j / 2] * fsum;
    }

    const double reskh = resk * 0.5;
    double resasc = kWgk[7] * std::fabs(fc - reskh);
    for (int j = 0; j < 7; ++j) {
        resasc += kWgk[j] * (std::fabs(fv1[j] - reskh) + std::fabs(fv2[j] - reskh));
    }

    PanelEval out;
    out.value = resk * hlgth;
    resabs *= std::fabs(hlgth);
    resasc *= std::fabs(hlgth);
    double err = std::fabs((resk - resg) * hlgth);
    if (resasc != 0.0 && err != 0.0) {
        err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    }
    const double eps50 = 50.0 * std::numeric_limits<double>::epsilon();
    const double uflow = std::numeric_limits<double>::min();
    if (resabs > uflow / eps50) err = std::max(eps50 * resabs, err);
    out.error = err;

    if (!std::isfinite(out.value) || !std::isfinite(out.error)) {
        out.value = std::isfinite(out.value) ? out.value : 0.0;
        out.error = std::numeric_limits<double>::infinity();
    }
    return out;
}

struct Segment {
    Integrand g;
    double lo = 0.0;
    double hi = 0.0;
};

struct Panel {
    double lo = 0.0;
    double hi = 0.0;
    double value = 0.0;
    double error = 0.0;
    int seg = 0;
    std::uint64_t id = 0;
};

struct PanelOrder {
    // Max-heap on error; ties broken toward the older panel for determinism.
    bool operator()(const Panel& a, const Panel& b) const {
        if (a.error != b.error) return a.error < b.error;
        return a.id > b.id;
    }
};

double kahan_sum(const std::vector<double>& xs) {
    double sum = 0.0;
    double comp = 0.0;
    for (double x : xs) {
        double y = x - comp;
        double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    return sum;
}

// Shared adaptive driver: refine the worst panel until the combined error
// meets tolerance or the remaining budget is spent.  Deterministic: the
// refinement schedule depends only on the integrand and config.
QuadratureOutcome run_adaptive(const std::vector<Segment>& segs, const QuadratureConfig& cfg,
                               int budget, int* used_io) {
    std::priority_queue<Panel, std::vector<Panel>, PanelOrder> heap;
    std::vector<Panel> parked;
    std::vector<double> seg_width(segs.size());

    double sum_v = 0.0;
    double sum_e = 0.0;
    int used = 0;
    std::uint64_t next_id = 0;

    auto push_panel = [&](int seg, double lo, double hi) {
        PanelEval pe = gk15(segs[static_cast<std::size_t>(seg)].g, lo, hi);
        ++used;
        Panel p{lo, hi, pe.value, pe.error, seg, next_id++};
        sum_v += p.value;
        sum_e += p.error;
        heap.push(p);
    };

    for (std::size_t s = 0; s < segs.size(); ++s) {
        seg_width[s] = segs[s].hi - segs[s].lo;
        push_panel(static_cast<int>(s), segs[s].lo, segs[s].hi);
    }

    Verdict verdict = Verdict::Inconclusive;
    while (true) {
        const double tol = std::max(cfg.rel_tol * std::fabs(sum_v), cfg.abs_tol);
        if (sum_e <= tol) {
            verdict = Verdict::Converged;
            break;
        }
        if (used + 2 > budget || heap.empty()) {
            verdict = Verdict::Inconclusive;
            break;
        }
        Panel worst = heap.top();
        heap.pop();
        if (worst.hi - worst.lo <= kWidthFloor * seg_width[static_cast<std::size_t>(worst.seg)]) {
            parked.push_back(worst);
            continue;
        }
        sum_v -= worst.value;
        sum_e -= worst.error;
        const double mid = 0.5 * (worst.lo + worst.hi);
        push_panel(worst.seg, worst.lo, mid);
        push_panel(worst.seg, mid, worst.hi);
    }

    // Recompute the totals with compensated summation over the final panels.
    std::vector<double> values;
    std::vector<double> errors;
    values.reserve(heap.size() + parked.size());
    errors.reserve(heap.size() + parked.size());
    for (const Panel& p : parked) {
        values.push_back(p.value);
        errors.push_back(p.error);
    }
    while (!heap.empty()) {
        values.push_back(heap.top().value);
        errors.push_back(heap.top().error);
        heap.pop();
    }

    QuadratureOutcome out;
    out.value = kahan_sum(values);
    out.error_estimate = kahan_sum(errors);
    out.panels_used = used;
    const double tol = std::max(cfg.rel_tol * std::fabs(out.value), cfg.abs_tol);
    out.verdict = (verdict == Verdict::Converged && out.error_estimate <= tol * (1.0 + 1e-12))
                      ? Verdict::Converged
                      : Verdict::Inconclusive;
    if (used_io != nullptr) *used_io += used;
    return out;
}

Integrand checked(const Integrand& f) {
    return [f](double x) {
        const double y = f(x);
        if (!std::isfinite(y)) {
            throw NonFiniteIntegrand("integrand non-finite at x = " + std::to_string(x));
        }
        return y;
    };
}

// rho = cut + t/(1-t), t in [0,1); the Kronrod nodes never touch t = 1.
Segment rational_tail_segment(const Integrand& f, double cut) {
    Integrand g = [f, cut](double t) {
        const double om = 1.0 - t;
        if (om <= 0.0) return 0.0;
        const double rho = cut + t / om;
        const double fy = f(rho);
        if (!std::isfinite(fy)) {
            throw NonFiniteIntegrand("integrand non-finite at rho = " + std::to_string(rho));
        }
        if (fy == 0.0) return 0.0;
        return fy / (om * om);  // may overflow to inf, poisoning the panel
    };
    return Segment{std::move(g), 0.0, 1.0};
}

// rho = R * exp(v/(1-v)), v in [0,1).  Kills power-law endpoint singularities:
// any integrand decaying faster than 1/rho becomes essentially zero at the
// far end.  Beyond u = 690 the true contribution of an integrable tail is
// below underflow, so the transformed integrand is treated as 0 there.
Segment exp_tail_segment(const Integrand& f, double start) {
    Integrand g = [f, start](double v) {
        const double om = 1.0 - v;
        if (om <= 0.0) return 0.0;
        const double u = v / om;
        if (u > 690.0) return 0.0;
        const double rho = start * std::exp(u);
        const double fy = f(rho);
        if (!std::isfinite(fy)) {
            throw NonFiniteIntegrand("integrand non-finite at rho = " + std::to_string(rho));
        }
        if (fy == 0.0) return 0.0;
        return fy * rho / (om * om);
    };
    return Segment{std::move(g), 0.0, 1.0};
}

double ls_slope(const std::vector<double>& xs, const std::vector<double>& ys) {
    const std::size_t m = xs.size();
    double xbar = 0.0;
    double ybar = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        xbar += xs[i];
        ybar += ys[i];
    }
    xbar /= static_cast<double>(m);
    ybar /= static_cast<double>(m);
    double sxy = 0.0;
    double sxx = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        sxy += (xs[i] - xbar) * (ys[i] - ybar);
        sxx += (xs[i] - xbar) * (xs[i] - xbar);
    }
    return sxy / sxx;
}

}  // namespace

void QuadratureConfig::validate() const {
    if (!(rel_tol > 0.0)) throw std::invalid_argument("rel_tol must be > 0");
    if (!(abs_tol >= 0.0)) throw std::invalid_argument("abs_tol must be >= 0");
    if (max_panels < 1) throw std::invalid_argument("max_panels must be >= 1");
    if (!(tail_cut > 0.0)) throw std::invalid_argument("tail_cut must be > 0");
    if (growth_window < 3) throw std::invalid_argument("growth_window must be >= 3");
}

const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::Converged: return "converged";
        case Verdict::Diverges: return "diverges";
        case Verdict::Inconclusive: return "inconclusive";
    }
    return "unknown";
}

bool QuadratureOutcome::within_tolerance(const QuadratureConfig& cfg) const {
    return error_estimate <= std::max(cfg.rel_tol * std::fabs(value), cfg.abs_tol);
}

QuadratureOutcome integrate_interval(const Integrand& f, double lo, double hi,
                                     const QuadratureConfig& cfg) {
    cfg.validate();
    if (!(hi >= lo)) throw std::invalid_argument("integrate_interval: hi < lo");
    if (hi == lo) {
        QuadratureOutcome out;
        out.verdict = Verdict::Converged;
        return out;
    }
    std::vector<Segment> segs;
    segs.push_back(Segment{checked(f), lo, hi});
    return run_adaptive(segs, cfg, cfg.max_panels, nullptr);
}

QuadratureOutcome integrate_half_line(const Integrand& f, const QuadratureConfig& cfg) {
    cfg.validate();
    std::vector<Segment> segs;
    segs.push_back(Segment{checked(f), 0.0, cfg.tail_cut});
    segs.push_back(rational_tail_segment(f, cfg.tail_cut));
    return run_adaptive(segs, cfg, cfg.max_panels, nullptr);
}

QuadratureOutcome probe_divergence(const Integrand& f, const QuadratureConfig& cfg) {
    cfg.validate();

    // Per-piece config: split the tolerance so the combined estimate can
    // still meet the caller's budget on the convergent branch.
    QuadratureConfig piece = cfg;
    piece.rel_tol = 0.5 * cfg.rel_tol;
    piece.abs_tol = cfg.abs_tol / static_cast<double>(cfg.growth_window + 2);

    int used = 0;
    std::vector<double> values;   // piece values: [0,R0], then the increments
    std::vector<double> errors;
    std::vector<double> radii;    // left endpoint of each increment
    std::vector<double> increments;

    auto run_piece = [&](double lo, double hi) -> QuadratureOutcome {
        std::vector<Segment> segs;
        segs.push_back(Segment{checked(f), lo, hi});
        return run_adaptive(segs, piece, cfg.max_panels - used, &used);
    };

    double radius = cfg.tail_cut;
    QuadratureOutcome head = run_piece(0.0, radius);
    QuadratureOutcome fail;
    fail.panels_used = used;
    if (head.verdict != Verdict::Converged) return fail;
    values.push_back(head.value);
    errors.push_back(head.error_estimate);

    for (int j = 0; j < cfg.growth_window; ++j) {
        QuadratureOutcome inc = run_piece(radius, 2.0 * radius);
        fail.panels_used = used;
        if (inc.verdict != Verdict::Converged) return fail;
        radii.push_back(radius);
        increments.push_back(inc.value);
        values.push_back(inc.value);
        errors.push_back(inc.error_estimate);
        radius *= 2.0;
    }

    const double total = kahan_sum(values);
    const double total_err = kahan_sum(errors);
    const double floor_tol = std::max(cfg.abs_tol, cfg.rel_tol * std::fabs(total));

    bool tail_negligible = true;
    for (double inc : increments) {
        if (std::fabs(inc) > floor_tol) tail_negligible = false;
    }

    if (!tail_negligible) {
        std::vector<double> xs;
        std::vector<double> ys;
        for (std::size_t j = 0; j < increments.size(); ++j) {
            if (increments[j] > 0.0) {
                xs.push_back(std::log(radii[j]));
                ys.push_back(std::log(increments[j]));
            }
        }
        if (xs.size() < 3) {
            fail.panels_used = used;
            return fail;  // sign-changing tail: cannot classify
        }
        const double slope = ls_slope(xs, ys);
        if (slope > -kSlopeThreshold) {
            QuadratureOutcome out;
            out.value = total;
            out.error_estimate = total_err;
            out.panels_used = used;
            out.verdict = Verdict::Diverges;
            out.growth_exponent = slope;
            return out;
        }
    }

    // Decreasing increments: confirm by integrating the remainder with the
    // exponential substitution, which flattens power tails at the far end.
    QuadratureConfig tail_cfg = cfg;
    tail_cfg.rel_tol = 0.5 * cfg.rel_tol;
    tail_cfg.abs_tol = std::max(0.25 * cfg.abs_tol, 0.25 * cfg.rel_tol * std::fabs(total));
    std::vector<Segment> segs;
    segs.push_back(exp_tail_segment(f, radius));
    QuadratureOutcome tail = run_adaptive(segs, tail_cfg, cfg.max_panels - used, &used);
    fail.panels_used = used;
    if (tail.verdict != Verdict::Converged) return fail;

    QuadratureOutcome out;
    out.value = total + tail.value;
    out.error_estimate = total_err + tail.error_estimate;
    out.panels_used = used;
    const double tol = std::max(cfg.rel_tol * std::fabs(out.value), cfg.abs_tol);
    out.verdict =
        out.error_estimate <= tol * (1.0 + 1e-12) ? Verdict::Converged : Verdict::Inconclusive;
    return out;
}

}  // namespace bergman
