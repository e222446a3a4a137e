#include "gkz/evaluate.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace gkz {

namespace {

constexpr double kExpClamp = 700.0;  // beyond this the integrand overflows double

void validate_config(const QuadratureConfig& cfg) {
    if (cfg.points_per_dim < 2)
        throw std::invalid_argument("QuadratureConfig: points_per_dim must be >= 2");
    if (!(cfg.tail_tolerance > 0.0) || !(cfg.tail_tolerance < 1.0))
        throw std::invalid_argument("QuadratureConfig: tail_tolerance must lie in (0,1)");
    if (!(cfg.max_halfwidth > 0.0))
        throw std::invalid_argument("QuadratureConfig: max_halfwidth must be positive");
    if (cfg.refinement < 1 || cfg.refinement > 8)
        throw std::invalid_argument("QuadratureConfig: refinement must lie in [1,8]");
}

void validate_params(const ReducedIntegral& red, const IntegrandParams& p) {
    const std::size_t n = red.num_vars();
    if (p.exponents.size() != n || p.scales.size() != n || p.offsets.size() != n)
        throw std::invalid_argument("IntegrandParams: length mismatch with reduction");
    for (double w : p.scales)
        if (!(w > 0.0) || !std::isfinite(w))
            throw std::invalid_argument("IntegrandParams: scales must be positive finite");
}

// Real part of the log-integrand, -inf when the exponential overflows.
double log_magnitude(const ReducedIntegral& red, const IntegrandParams& p,
                     const std::vector<double>& s) {
    const std::size_t n = red.num_vars(), m = red.num_free();
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double t = p.offsets[i];
        for (std::size_t a = 0; a < m; ++a) t += red.E_dbl[i * m + a] * s[a];
        if (t > kExpClamp) return -std::numeric_limits<double>::infinity();
        acc += p.exponents[i].real() * t - p.scales[i] * std::exp(t);
    }
    return acc;
}

// Damped Newton ascent of the strictly concave map
//   s -> sum_i gre_i T_i - w_i e^{T_i},  T = E s + d.
// Far from the optimum an Armijo line search keeps the steps safe; inside
// the quadratic basin plain unit Newton steps take over, because there the
// Armijo comparison drowns in the roundoff of the objective.  Returns the
// achieved maximum, leaves the maximizer in s and the gradient max-norm at
// that point in grad_norm.
double concave_ascent(const Eigen::MatrixXd& E, const Eigen::VectorXd& gre,
                      const Eigen::VectorXd& w, const Eigen::VectorXd& d, Eigen::VectorXd& s,
                      double& grad_norm) {
    const std::size_t n = E.rows(), m = E.cols();
    const Eigen::VectorXd c = E.transpose() * gre;

    auto value_at = [&](const Eigen::VectorXd& sv) {
        Eigen::VectorXd t = E * sv + d;
        double acc = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            if (t(i) > kExpClamp) return -std::numeric_limits<double>::infinity();
            acc += gre(i) * t(i) - w(i) * std::exp(t(i));
        }
        return acc;
    };
    auto residual_gradient = [&](Eigen::VectorXd& q) {
        Eigen::VectorXd t = E * s + d;
        for (std::size_t i = 0; i < n; ++i) q(i) = w(i) * std::exp(std::min(t(i), kExpClamp));
        return Eigen::VectorXd(c - E.transpose() * q);
    };

    if (m == 0) {
        grad_norm = 0.0;
        return value_at(s);
    }

    const double scale = std::max(1.0, c.cwiseAbs().maxCoeff());
    double fval = value_at(s);
    Eigen::VectorXd q(n);
    for (int iter = 0; iter < 200; ++iter) {
        Eigen::VectorXd grad = residual_gradient(q);
        if (grad.cwiseAbs().maxCoeff() <= 1e-12 * scale) break;

        Eigen::MatrixXd h = E.transpose() * q.asDiagonal() * E;  // minus the Hessian
        Eigen::VectorXd step = h.llt().solve(grad);
        double slope = grad.dot(step);
        if (!(slope > 0.0)) {  // numerical degeneracy: fall back to gradient ascent
            step = grad;
            slope = grad.squaredNorm();
        }
        if (grad.cwiseAbs().maxCoeff() <= 1e-4 * scale) {
            s += step;
            fval = value_at(s);
            continue;
        }
        double tstep = 1.0;
        bool moved = false;
        for (int bt = 0; bt < 70; ++bt) {
            double trial = value_at(s + tstep * step);
            if (trial >= fval + 0.25 * tstep * slope) {
                s += tstep * step;
                fval = trial;
                moved = true;
                break;
            }
            tstep *= 0.5;
        }
        // No representable progress left: we are at the numerical optimum.
        if (!moved) break;
    }
    grad_norm = residual_gradient(q).cwiseAbs().maxCoeff();
    return fval;
}

} // namespace

std::vector<double> find_stationary_point(const ReducedIntegral& red,
                                          const IntegrandParams& p) {
    validate_params(red, p);
    const std::size_t n = red.num_vars(), m = red.num_free();
    if (m == 0) return {};

    Eigen::MatrixXd E(n, m);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t a = 0; a < m; ++a) E(i, a) = red.E_dbl[i * m + a];
    Eigen::VectorXd d(n), gre(n), w(n);
    for (std::size_t i = 0; i < n; ++i) {
        d(i) = p.offsets[i];
        gre(i) = p.exponents[i].real();
        w(i) = p.scales[i];
    }
    Eigen::VectorXd c = E.transpose() * gre;

    // Initial guess: least squares toward the unconstrained stationary sheet
    // w_i e^{T_i} = Re g_i over the rows with positive Re g_i.
    std::vector<int> rows;
    for (std::size_t i = 0; i < n; ++i)
        if (gre(i) > 0.0) rows.push_back(static_cast<int>(i));
    Eigen::VectorXd s = Eigen::VectorXd::Zero(m);
    if (!rows.empty()) {
        Eigen::MatrixXd Er(rows.size(), m);
        Eigen::VectorXd rhs(rows.size());
        for (std::size_t k = 0; k < rows.size(); ++k) {
            Er.row(k) = E.row(rows[k]);
            rhs(k) = std::log(gre(rows[k]) / w(rows[k])) - d(rows[k]);
        }
        s = Er.colPivHouseholderQr().solve(rhs);
    }

    double gnorm = 0.0;
    concave_ascent(E, gre, w, d, s, gnorm);

    // The mode only anchors the quadrature box, so modest gradient residue is
    // harmless; the guard has to catch runaway directions where the gradient
    // stays at the scale of the coefficients.
    if (!(gnorm <= 1e-8 * std::max(1.0, c.cwiseAbs().maxCoeff())))
        throw std::domain_error("find_stationary_point: Newton ascent did not converge (gradient " +
                                std::to_string(gnorm) + ")");
    return std::vector<double>(s.data(), s.data() + m);
}

QuadratureBox choose_box(const ReducedIntegral& red, const IntegrandParams& p,
                         const std::vector<double>& mode, const QuadratureConfig& cfg) {
    validate_params(red, p);
    const std::size_t m = red.num_free();
    if (mode.size() != m)
        throw std::invalid_argument("choose_box: mode dimension mismatch");

    QuadratureBox box;
    box.lo.resize(m);
    box.hi.resize(m);
    if (m == 0) return box;

    const double peak = log_magnitude(red, p, mode);
    const double target = -std::log(cfg.tail_tolerance);

    const std::size_t n = red.num_vars();
    Eigen::MatrixXd E(n, m);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t a = 0; a < m; ++a) E(i, a) = red.E_dbl[i * m + a];
    Eigen::VectorXd gre(n), w(n), d(n);
    for (std::size_t i = 0; i < n; ++i) {
        gre(i) = p.exponents[i].real();
        w(i) = p.scales[i];
        d(i) = p.offsets[i];
    }

    // A face is far enough out once the integrand maximum over the whole
    // face has dropped below the tail target; checking only the axis ray
    // through the mode underestimates the box when the axes are correlated.
    // Restricting one coordinate gives the same exponential family with the
    // fixed column folded into the offsets, so the same concave ascent
    // produces the face maximum, and partial maximization of a concave
    // function keeps the drop monotone in the halfwidth: bisection applies.
    for (std::size_t a = 0; a < m; ++a) {
        Eigen::MatrixXd Eface(n, m - 1);
        Eigen::VectorXd warm0(m - 1);
        for (std::size_t b = 0, k = 0; b < m; ++b) {
            if (b == a) continue;
            Eface.col(k) = E.col(b);
            warm0(k) = mode[b];
            ++k;
        }
        for (int dir = -1; dir <= 1; dir += 2) {
            Eigen::VectorXd warm = warm0;
            auto drop = [&](double hw) {
                Eigen::VectorXd dface = d + E.col(a) * (mode[a] + dir * hw);
                double gn = 0.0;
                return peak - concave_ascent(Eface, gre, w, dface, warm, gn);
            };
            if (drop(cfg.max_halfwidth) < target)
                throw std::domain_error(
                    "choose_box: integrand tail has not decayed to tail_tolerance within "
                    "max_halfwidth (axis " + std::to_string(a) + "); the integral looks "
                    "divergent or needs a larger max_halfwidth");
            double lo = 0.0, hi = cfg.max_halfwidth;
            for (int it = 0; it < 60 && (hi - lo) > 1e-6 * cfg.max_halfwidth; ++it) {
                double mid = 0.5 * (lo + hi);
                (drop(mid) >= target ? hi : lo) = mid;
            }
            if (dir < 0)
                box.lo[a] = mode[a] - hi;
            else
                box.hi[a] = mode[a] + hi;
        }
    }
    return box;
}

Complex integrate_box(const ReducedIntegral& red, const IntegrandParams& p,
                      const QuadratureBox& box, int points_per_axis) {
    validate_params(red, p);
    const std::size_t n = red.num_vars(), m = red.num_free();

    Complex gdotd(0.0, 0.0);
    for (std::size_t i = 0; i < n; ++i) gdotd += p.exponents[i] * p.offsets[i];

    if (m == 0) {
        double sw = 0.0;
        for (std::size_t i = 0; i < n; ++i) sw += p.scales[i] * std::exp(p.offsets[i]);
        return red.factor_dbl * std::exp(gdotd - sw);
    }

    if (box.lo.size() != m || box.hi.size() != m)
        throw std::invalid_argument("integrate_box: box dimension mismatch");
    const int npts = points_per_axis;
    if (npts < 2) throw std::invalid_argument("integrate_box: need at least two points per axis");
    double total_pts = 1.0;
    for (std::size_t a = 0; a < m; ++a) total_pts *= npts;
    if (total_pts > 6e8)
        throw std::invalid_argument("integrate_box: grid would exceed the point budget");

    bool real_only = true;
    for (std::size_t i = 0; i < n; ++i)
        if (p.exponents[i].imag() != 0.0) { real_only = false; break; }

    // Per-axis tables: node positions, trapezoid weights, the complex
    // exponent contribution (E^T g)_a s_a(k), and the real factors
    // exp(E_ia s_a(k)) whose per-row products give e^{T_i - d_i}.
    std::vector<std::vector<double>> wt(m);
    std::vector<std::vector<Complex>> cg(m);
    std::vector<std::vector<double>> tab(m);  // [a][i*npts + k]
    for (std::size_t a = 0; a < m; ++a) {
        const double h = (box.hi[a] - box.lo[a]) / (npts - 1);
        Complex ga(0.0, 0.0);
        for (std::size_t i = 0; i < n; ++i) ga += p.exponents[i] * red.E_dbl[i * m + a];
        wt[a].resize(npts);
        cg[a].resize(npts);
        tab[a].resize(n * npts);
        for (int k = 0; k < npts; ++k) {
            const double sk = box.lo[a] + h * k;
            wt[a][k] = (k == 0 || k == npts - 1) ? 0.5 * h : h;
            cg[a][k] = ga * sk;
            for (std::size_t i = 0; i < n; ++i)
                tab[a][i * npts + k] = std::exp(red.E_dbl[i * m + a] * sk);
        }
    }

    std::vector<double> wexp(n);  // w_i e^{d_i}
    for (std::size_t i = 0; i < n; ++i) wexp[i] = p.scales[i] * std::exp(p.offsets[i]);

    // Anchor the exponent at the box center to keep exp() in range.
    std::vector<double> mid(m);
    for (std::size_t a = 0; a < m; ++a) mid[a] = 0.5 * (box.lo[a] + box.hi[a]);
    const double anchor = log_magnitude(red, p, mid);

    const double base_re = gdotd.real() - anchor;
    const double base_im = gdotd.imag();

    std::vector<int> digits(m);
    auto point_value = [&](std::uint64_t idx) {
        std::uint64_t k = idx;
        for (std::size_t a = 0; a < m; ++a) {
            digits[a] = static_cast<int>(k % npts);
            k /= npts;
        }
        double re = base_re, im = base_im, weight = 1.0;
        for (std::size_t a = 0; a < m; ++a) {
            const Complex& c = cg[a][digits[a]];
            re += c.real();
            im += c.imag();
            weight *= wt[a][digits[a]];
        }
        double sw = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            double prod = wexp[i];
            for (std::size_t a = 0; a < m; ++a) prod *= tab[a][i * npts + digits[a]];
            sw += prod;
        }
        re -= sw;
        const double mag = std::exp(re) * weight;
        if (real_only) return Complex(mag, 0.0);
        return Complex(mag * std::cos(im), mag * std::sin(im));
    };

    // Fixed-order pairwise summation: deterministic and accurate.
    const std::uint64_t total = static_cast<std::uint64_t>(total_pts);
    auto sum_range = [&](auto&& self, std::uint64_t lo, std::uint64_t hi) -> Complex {
        if (hi - lo <= 16) {
            Complex acc(0.0, 0.0);
            for (std::uint64_t i = lo; i < hi; ++i) acc += point_value(i);
            return acc;
        }
        const std::uint64_t mid_idx = lo + (hi - lo) / 2;
        return self(self, lo, mid_idx) + self(self, mid_idx, hi);
    };
    Complex total_sum = sum_range(sum_range, 0, total);
    return red.factor_dbl * std::exp(anchor) * total_sum;
}

void check_chamber(const ReducedIntegral& red, const SpectralVector& gamma) {
    if (gamma.size() != red.num_vars())
        throw std::invalid_argument("check_chamber: spectral vector length mismatch");
    for (std::size_t f : red.frees)
        if (!(gamma[f].real() > 0.0))
            throw std::domain_error("spectral vector outside convergence chamber: component " +
                                    std::to_string(f) +
                                    " is delta-free and needs strictly positive real part");
    for (std::size_t pp : red.pivots)
        if (!(gamma[pp].real() >= 0.0))
            throw std::domain_error("spectral vector outside convergence chamber: component " +
                                    std::to_string(pp) +
                                    " is delta-pinned and needs nonnegative real part");
}

namespace {

IntegrandParams gg_params(const ReducedIntegral& red, const SpectralVector& gamma,
                          const ArgumentVector& u) {
    if (u.size() != red.num_vars())
        throw std::invalid_argument("evaluate: argument vector length mismatch");
    IntegrandParams p;
    p.exponents = gamma.gamma;
    p.scales.assign(red.num_vars(), 1.0);
    p.offsets = red.offsets_for(u.y);
    return p;
}

IntegrandParams gkz_params(const ReducedIntegral& red, const SpectralVector& gamma,
                           const ArgumentVector& u) {
    if (u.size() != red.num_vars())
        throw std::invalid_argument("evaluate: argument vector length mismatch");
    IntegrandParams p;
    p.exponents = gamma.gamma;
    p.scales = u.u;
    p.offsets.assign(red.num_vars(), 0.0);
    return p;
}

EvalResult evaluate_reduced(const ReducedIntegral& red, const IntegrandParams& p,
                            const QuadratureConfig& cfg) {
    if (red.num_free() == 0)
        return EvalResult{integrate_box(red, p, QuadratureBox{}, 2), 0.0};
    std::vector<double> mode = find_stationary_point(red, p);
    QuadratureBox box = choose_box(red, p, mode, cfg);
    int coarse_pts = cfg.points_per_dim;
    for (int k = 1; k < cfg.refinement; ++k) coarse_pts *= 2;
    Complex coarse = integrate_box(red, p, box, coarse_pts);
    Complex fine = integrate_box(red, p, box, 2 * coarse_pts);
    return EvalResult{fine, std::abs(fine - coarse)};
}

} // namespace

std::vector<double> find_laplace_mode(const ReducedIntegral& red, const SpectralVector& gamma,
                                      const ArgumentVector& u) {
    return find_stationary_point(red, gg_params(red, gamma, u));
}

EvalResult evaluate_gg(const GkzData& data, const SpectralVector& gamma, const ArgumentVector& u,
                       const QuadratureConfig& cfg,
                       const std::vector<std::size_t>& pivot_preference) {
    validate_config(cfg);
    ReducedIntegral red = resolve_deltas(data, pivot_preference);
    check_chamber(red, gamma);
    return evaluate_reduced(red, gg_params(red, gamma, u), cfg);
}

EvalResult evaluate_gkz(const GkzData& data, const SpectralVector& gamma, const ArgumentVector& u,
                        const QuadratureConfig& cfg,
                        const std::vector<std::size_t>& pivot_preference) {
    validate_config(cfg);
    ReducedIntegral red = resolve_deltas(data, pivot_preference);
    check_chamber(red, gamma);
    return evaluate_reduced(red, gkz_params(red, gamma, u), cfg);
}

FrozenGgPlan::FrozenGgPlan(const GkzData& data, const SpectralVector& gamma,
                           const ArgumentVector& u, const QuadratureConfig& cfg,
                           const std::vector<std::size_t>& pivot_preference)
    : red_(resolve_deltas(data, pivot_preference)) {
    validate_config(cfg);
    check_chamber(red_, gamma);
    points_ = cfg.points_per_dim;
    for (int k = 0; k < cfg.refinement; ++k) points_ *= 2;
    if (red_.num_free() > 0) {
        IntegrandParams p = gg_params(red_, gamma, u);
        std::vector<double> mode = find_stationary_point(red_, p);
        box_ = choose_box(red_, p, mode, cfg);
    }
}

Complex FrozenGgPlan::value(const SpectralVector& gamma, const ArgumentVector& u) const {
    check_chamber(red_, gamma);
    return integrate_box(red_, gg_params(red_, gamma, u), box_, points_);
}

} // namespace gkz
