#include "gkz/oscillator.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "gkz/reduce.hpp"

namespace gkz {

namespace {

Int binom(unsigned n, unsigned k) {
    if (k > n) return 0;
    Int r = 1;
    for (unsigned j = 0; j < k; ++j) {
        r *= n - j;
        r /= j + 1;
    }
    return r;
}

Int factorial(unsigned n) {
    Int r = 1;
    for (unsigned j = 2; j <= n; ++j) r *= j;
    return r;
}

} // namespace

SpectralPoly SpectralPoly::constant(std::size_t n, const Rat& c) {
    SpectralPoly p(n);
    if (c != 0) p.terms_.emplace(std::vector<unsigned>(n, 0), c);
    return p;
}

SpectralPoly SpectralPoly::variable(std::size_t n, std::size_t i) {
    if (i >= n) throw std::invalid_argument("SpectralPoly: variable index out of range");
    SpectralPoly p(n);
    std::vector<unsigned> e(n, 0);
    e[i] = 1;
    p.terms_.emplace(std::move(e), Rat(1));
    return p;
}

void SpectralPoly::add_term(const std::vector<unsigned>& expo, const Rat& c) {
    if (c == 0) return;
    auto [it, fresh] = terms_.emplace(expo, c);
    if (!fresh) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

SpectralPoly SpectralPoly::operator+(const SpectralPoly& rhs) const {
    if (n_ != rhs.n_) throw std::invalid_argument("SpectralPoly: arity mismatch");
    SpectralPoly out = *this;
    for (const auto& [e, c] : rhs.terms_) out.add_term(e, c);
    return out;
}

SpectralPoly SpectralPoly::operator-(const SpectralPoly& rhs) const {
    if (n_ != rhs.n_) throw std::invalid_argument("SpectralPoly: arity mismatch");
    SpectralPoly out = *this;
    for (const auto& [e, c] : rhs.terms_) out.add_term(e, -c);
    return out;
}

SpectralPoly SpectralPoly::operator*(const SpectralPoly& rhs) const {
    if (n_ != rhs.n_) throw std::invalid_argument("SpectralPoly: arity mismatch");
    SpectralPoly out(n_);
    for (const auto& [e1, c1] : terms_)
        for (const auto& [e2, c2] : rhs.terms_) {
            std::vector<unsigned> e(n_);
            for (std::size_t i = 0; i < n_; ++i) e[i] = e1[i] + e2[i];
            out.add_term(e, c1 * c2);
        }
    return out;
}

SpectralPoly SpectralPoly::operator-() const {
    SpectralPoly out(n_);
    for (const auto& [e, c] : terms_) out.terms_.emplace(e, -c);
    return out;
}

Rat SpectralPoly::eval(const std::vector<Rat>& point) const {
    if (point.size() != n_) throw std::invalid_argument("SpectralPoly: eval arity mismatch");
    Rat acc = 0;
    for (const auto& [e, c] : terms_) {
        Rat t = c;
        for (std::size_t i = 0; i < n_; ++i)
            for (unsigned k = 0; k < e[i]; ++k) t *= point[i];
        acc += t;
    }
    return acc;
}

std::string SpectralPoly::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : terms_) {
        os << (first ? "" : " + ") << c;
        for (std::size_t i = 0; i < n_; ++i)
            if (e[i] > 0) {
                os << "*g" << i;
                if (e[i] > 1) os << "^" << e[i];
            }
        first = false;
    }
    return os.str();
}

WeylElement WeylElement::unit(std::size_t n) {
    WeylElement w(n);
    w.terms_.emplace(std::vector<unsigned>(2 * n, 0), SpectralPoly::constant(n, 1));
    return w;
}

WeylElement WeylElement::coordinate(std::size_t n, std::size_t i) {
    if (i >= n) throw std::invalid_argument("WeylElement: variable index out of range");
    WeylElement w(n);
    std::vector<unsigned> key(2 * n, 0);
    key[i] = 1;
    w.terms_.emplace(std::move(key), SpectralPoly::constant(n, 1));
    return w;
}

WeylElement WeylElement::derivative(std::size_t n, std::size_t i) {
    if (i >= n) throw std::invalid_argument("WeylElement: variable index out of range");
    WeylElement w(n);
    std::vector<unsigned> key(2 * n, 0);
    key[n + i] = 1;
    w.terms_.emplace(std::move(key), SpectralPoly::constant(n, 1));
    return w;
}

WeylElement WeylElement::scalar(std::size_t n, const SpectralPoly& c) {
    WeylElement w(n);
    if (!c.is_zero()) w.terms_.emplace(std::vector<unsigned>(2 * n, 0), c);
    return w;
}

void WeylElement::add_term(const std::vector<unsigned>& tpow, const std::vector<unsigned>& dpow,
                           const SpectralPoly& c) {
    if (c.is_zero()) return;
    std::vector<unsigned> key(2 * n_);
    for (std::size_t i = 0; i < n_; ++i) {
        key[i] = tpow[i];
        key[n_ + i] = dpow[i];
    }
    auto it = terms_.find(key);
    if (it == terms_.end()) {
        terms_.emplace(std::move(key), c);
    } else {
        SpectralPoly sum = it->second + c;
        if (sum.is_zero())
            terms_.erase(it);
        else
            it->second = sum;
    }
}

WeylElement WeylElement::operator+(const WeylElement& rhs) const {
    if (n_ != rhs.n_) throw std::invalid_argument("WeylElement: arity mismatch");
    WeylElement out = *this;
    for (const auto& [key, c] : rhs.terms_) {
        auto it = out.terms_.find(key);
        if (it == out.terms_.end()) {
            out.terms_.emplace(key, c);
        } else {
            SpectralPoly sum = it->second + c;
            if (sum.is_zero())
                out.terms_.erase(it);
            else
                it->second = sum;
        }
    }
    return out;
}

WeylElement WeylElement::operator-(const WeylElement& rhs) const { return *this + (-rhs); }

WeylElement WeylElement::operator-() const {
    WeylElement out(n_);
    for (const auto& [key, c] : terms_) out.terms_.emplace(key, -c);
    return out;
}

WeylElement WeylElement::operator*(const WeylElement& rhs) const {
    if (n_ != rhs.n_) throw std::invalid_argument("WeylElement: arity mismatch");
    WeylElement out(n_);
    std::vector<unsigned> tpow(n_), dpow(n_);
    for (const auto& [k1, c1] : terms_) {
        for (const auto& [k2, c2] : rhs.terms_) {
            SpectralPoly coef = c1 * c2;
            // Normal-order (t^a1 d^b1)(t^a2 d^b2) variable by variable:
            // d^b t^c = sum_k k! C(b,k) C(c,k) t^{c-k} d^{b-k}.
            std::vector<std::vector<std::pair<unsigned, Int>>> choices(n_);
            for (std::size_t v = 0; v < n_; ++v) {
                const unsigned b1 = k1[n_ + v], a2 = k2[v];
                const unsigned kmax = std::min(b1, a2);
                for (unsigned k = 0; k <= kmax; ++k)
                    choices[v].emplace_back(k, factorial(k) * binom(b1, k) * binom(a2, k));
            }
            // walk the cartesian product of contraction orders
            std::vector<std::size_t> idx(n_, 0);
            while (true) {
                Int mult = 1;
                for (std::size_t v = 0; v < n_; ++v) {
                    const auto& [k, f] = choices[v][idx[v]];
                    mult *= f;
                    tpow[v] = k1[v] + k2[v] - k;
                    dpow[v] = k1[n_ + v] + k2[n_ + v] - k;
                }
                out.add_term(tpow, dpow, coef * SpectralPoly::constant(n_, Rat(mult)));
                std::size_t v = 0;
                while (v < n_ && ++idx[v] == choices[v].size()) idx[v++] = 0;
                if (v == n_) break;  // odometer rolled over: product exhausted
            }
        }
    }
    return out;
}

std::string WeylElement::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [key, c] : terms_) {
        os << (first ? "" : " + ") << "(" << c.to_string() << ")";
        for (std::size_t i = 0; i < n_; ++i)
            if (key[i] > 0) os << "*t" << i << (key[i] > 1 ? "^" + std::to_string(key[i]) : "");
        for (std::size_t i = 0; i < n_; ++i)
            if (key[n_ + i] > 0)
                os << "*d" << i << (key[n_ + i] > 1 ? "^" + std::to_string(key[n_ + i]) : "");
        first = false;
    }
    return os.str();
}

WeylElement weyl_product(const WeylElement& a, const WeylElement& b) { return a * b; }

WeylElement commutator(const WeylElement& a, const WeylElement& b) { return a * b - b * a; }

SpectralAssignment SpectralAssignment::formal(std::size_t n) {
    SpectralAssignment s;
    s.n_ = n;
    s.formal_ = true;
    return s;
}

SpectralAssignment SpectralAssignment::numeric(std::vector<Rat> values) {
    SpectralAssignment s;
    s.n_ = values.size();
    s.formal_ = false;
    s.values_ = std::move(values);
    return s;
}

SpectralPoly SpectralAssignment::component(std::size_t i) const {
    if (i >= n_) throw std::invalid_argument("SpectralAssignment: index out of range");
    return formal_ ? SpectralPoly::variable(n_, i) : SpectralPoly::constant(n_, values_[i]);
}

WeylElement represent(const Generator& g, const SpectralAssignment& gamma) {
    const std::size_t n = gamma.size();
    switch (g.kind) {
        case GeneratorKind::center:
            return WeylElement::unit(n);
        case GeneratorKind::lowering:
            return -WeylElement::derivative(n, g.index);
        case GeneratorKind::raising:
            return -WeylElement::coordinate(n, g.index);
        case GeneratorKind::grading:
            return WeylElement::scalar(n, gamma.component(g.index)) +
                   WeylElement::coordinate(n, g.index) * WeylElement::derivative(n, g.index);
    }
    throw std::logic_error("represent: unknown generator kind");
}

WeylElement represent_dual(const Generator& g, const SpectralAssignment& gamma) {
    const std::size_t n = gamma.size();
    switch (g.kind) {
        case GeneratorKind::center:
            return -WeylElement::unit(n);
        case GeneratorKind::lowering:
            return -WeylElement::derivative(n, g.index);
        case GeneratorKind::raising:
            return WeylElement::coordinate(n, g.index);
        case GeneratorKind::grading:
            return WeylElement::scalar(
                       n, SpectralPoly::constant(n, 1) - gamma.component(g.index)) +
                   WeylElement::coordinate(n, g.index) * WeylElement::derivative(n, g.index);
    }
    throw std::logic_error("represent_dual: unknown generator kind");
}

WeylElement casimir_image(const std::vector<long long>& l, const SpectralAssignment& gamma) {
    const std::size_t n = l.size();
    if (gamma.size() != n)
        throw std::invalid_argument("casimir_image: spectral assignment arity mismatch");

    auto pair_power = [&](std::size_t i, unsigned p) {
        // (raising_i lowering_i)^p under the representation
        WeylElement acc = WeylElement::unit(n);
        WeylElement rf = represent({GeneratorKind::raising, i}, gamma);
        WeylElement lf = represent({GeneratorKind::lowering, i}, gamma);
        for (unsigned k = 0; k < p; ++k) acc = acc * rf;
        for (unsigned k = 0; k < p; ++k) acc = acc * lf;
        return acc;
    };
    auto falling_grading = [&](std::size_t i, unsigned p) {
        // prod_{k=0}^{p-1} (grading_i - gamma_i - k) under the representation
        WeylElement acc = WeylElement::unit(n);
        WeylElement h = represent({GeneratorKind::grading, i}, gamma);
        for (unsigned k = 0; k < p; ++k) {
            WeylElement shift = WeylElement::scalar(
                n, gamma.component(i) + SpectralPoly::constant(n, Rat(k)));
            acc = acc * (h - shift);
        }
        return acc;
    };

    WeylElement first = WeylElement::unit(n), second = WeylElement::unit(n);
    for (std::size_t i = 0; i < n; ++i)
        if (l[i] < 0) first = first * pair_power(i, static_cast<unsigned>(-l[i]));
    for (std::size_t i = 0; i < n; ++i)
        if (l[i] > 0) first = first * falling_grading(i, static_cast<unsigned>(l[i]));
    for (std::size_t i = 0; i < n; ++i)
        if (l[i] > 0) second = second * pair_power(i, static_cast<unsigned>(l[i]));
    for (std::size_t i = 0; i < n; ++i)
        if (l[i] < 0) second = second * falling_grading(i, static_cast<unsigned>(-l[i]));
    return first - second;
}

bool verify_annihilation(const std::vector<long long>& l, const SpectralAssignment& gamma) {
    return casimir_image(l, gamma).is_zero();
}

bool euler_identity_check(unsigned n) {
    WeylElement acc = WeylElement::unit(1);
    WeylElement td = WeylElement::coordinate(1, 0) * WeylElement::derivative(1, 0);
    for (unsigned k = 0; k < n; ++k)
        acc = acc * (td - WeylElement::scalar(1, SpectralPoly::constant(1, Rat(k))));
    WeylElement expect = WeylElement::unit(1);
    for (unsigned k = 0; k < n; ++k) expect = expect * WeylElement::coordinate(1, 0);
    for (unsigned k = 0; k < n; ++k) expect = expect * WeylElement::derivative(1, 0);
    return acc == expect;
}

std::vector<SeparableExponential> apply_weyl(const WeylElement& w, const SeparableExponential& f) {
    const std::size_t n = w.vars();
    if (f.powers.size() != n || f.qs.size() != n)
        throw std::invalid_argument("apply_weyl: test function arity mismatch");

    std::vector<SeparableExponential> out;
    w.for_each_term([&](const std::vector<unsigned>& a, const std::vector<unsigned>& b,
                        const SpectralPoly& coef) {
        Rat cval = coef.eval(std::vector<Rat>(n, Rat(0)));
        {
            // reject non-constant coefficients: evaluating at zero would hide them
            SpectralPoly diff = coef - SpectralPoly::constant(n, cval);
            if (!diff.is_zero())
                throw std::invalid_argument("apply_weyl: needs numeric spectral coefficients");
        }
        // d^b (t^p e^{-q t}) = sum_j C(b,j) p!/(p-j)! t^{p-j} (-q)^{b-j} e^{-q t}
        std::vector<std::vector<std::pair<unsigned, double>>> choices(n);
        for (std::size_t v = 0; v < n; ++v) {
            const unsigned bv = b[v], pv = f.powers[v];
            for (unsigned j = 0; j <= std::min(bv, pv); ++j) {
                double fall = 1.0;
                for (unsigned k = 0; k < j; ++k) fall *= static_cast<double>(pv - k);
                double c = to_double(binom(bv, j)) * fall * std::pow(-f.qs[v], bv - j);
                choices[v].emplace_back(j, c);
            }
        }
        std::vector<std::size_t> idx(n, 0);
        while (true) {
            SeparableExponential g;
            g.qs = f.qs;
            g.powers.resize(n);
            double c = to_double(cval);
            for (std::size_t v = 0; v < n; ++v) {
                const auto& [j, cv] = choices[v][idx[v]];
                c *= cv;
                g.powers[v] = f.powers[v] - j + a[v];
            }
            g.coef = f.coef * c;
            if (c != 0.0) out.push_back(std::move(g));
            std::size_t v = 0;
            while (v < n && ++idx[v] == choices[v].size()) idx[v++] = 0;
            if (v == n) break;
        }
    });
    return out;
}

Complex phiL_pairing(const GkzData& data, const SpectralVector& gamma,
                     const SeparableExponential& f, const QuadratureConfig& cfg) {
    const std::size_t n = data.num_variables();
    if (gamma.size() != n || f.powers.size() != n || f.qs.size() != n)
        throw std::invalid_argument("phiL_pairing: arity mismatch");
    for (double q : f.qs)
        if (!(q > 0.0))
            throw std::invalid_argument("phiL_pairing: exponential rates must be positive");

    ReducedIntegral red = resolve_deltas(data);
    IntegrandParams p;
    p.exponents.resize(n);
    for (std::size_t i = 0; i < n; ++i)
        p.exponents[i] = gamma[i] + static_cast<double>(f.powers[i]);
    p.scales = f.qs;
    p.offsets.assign(n, 0.0);
    check_chamber(red, SpectralVector{p.exponents});

    if (red.num_free() == 0) return f.coef * integrate_box(red, p, QuadratureBox{}, 2);
    std::vector<double> mode = find_stationary_point(red, p);
    QuadratureBox box = choose_box(red, p, mode, cfg);
    int pts = cfg.points_per_dim;
    for (int k = 0; k < cfg.refinement; ++k) pts *= 2;
    return f.coef * integrate_box(red, p, box, pts);
}

} // namespace gkz
