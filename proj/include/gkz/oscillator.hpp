#pragma once

#include <map>
#include <string>
#include <vector>

#include "gkz/evaluate.hpp"
#include "gkz/exact.hpp"
#include "gkz/gkz_data.hpp"

namespace gkz {

/// Sparse polynomial in the spectral symbols g_1..g_n over exact rationals.
/// Numeric spectral values are represented as constant polynomials, so the
/// same engine serves both the symbolic and the specialized certificates.
class SpectralPoly {
public:
    SpectralPoly() = default;
    explicit SpectralPoly(std::size_t n) : n_(n) {}

    static SpectralPoly constant(std::size_t n, const Rat& c);
    static SpectralPoly variable(std::size_t n, std::size_t i);

    std::size_t vars() const { return n_; }
    bool is_zero() const { return terms_.empty(); }
    bool operator==(const SpectralPoly& rhs) const = default;

    SpectralPoly operator+(const SpectralPoly& rhs) const;
    SpectralPoly operator-(const SpectralPoly& rhs) const;
    SpectralPoly operator*(const SpectralPoly& rhs) const;
    SpectralPoly operator-() const;

    /// Value at a rational point (for cross-checking symbolic results).
    Rat eval(const std::vector<Rat>& point) const;

    std::string to_string() const;

private:
    void add_term(const std::vector<unsigned>& expo, const Rat& c);

    std::size_t n_ = 0;
    std::map<std::vector<unsigned>, Rat> terms_;  // exponent vector -> coefficient
};

/// Element of the Weyl algebra on n variables: finite sum of normally
/// ordered monomials t^a d^b with SpectralPoly coefficients.  All products
/// are normal-ordered eagerly, so zero elements have an empty term map and
/// equality is syntactic.
class WeylElement {
public:
    WeylElement() = default;
    explicit WeylElement(std::size_t n) : n_(n) {}

    static WeylElement zero(std::size_t n) { return WeylElement(n); }
    static WeylElement unit(std::size_t n);
    static WeylElement coordinate(std::size_t n, std::size_t i);   // t_i
    static WeylElement derivative(std::size_t n, std::size_t i);   // d/dt_i
    static WeylElement scalar(std::size_t n, const SpectralPoly& c);

    std::size_t vars() const { return n_; }
    bool is_zero() const { return terms_.empty(); }
    bool operator==(const WeylElement& rhs) const = default;

    WeylElement operator+(const WeylElement& rhs) const;
    WeylElement operator-(const WeylElement& rhs) const;
    WeylElement operator*(const WeylElement& rhs) const;  // normal-ordering product
    WeylElement operator-() const;

    std::size_t term_count() const { return terms_.size(); }
    std::string to_string() const;

    /// Iteration hook for applying the element to concrete functions:
    /// calls fn(t_exponents, d_exponents, coefficient) per stored term.
    template <typename F>
    void for_each_term(F&& fn) const {
        for (const auto& [key, coef] : terms_) {
            std::vector<unsigned> a(key.begin(), key.begin() + n_);
            std::vector<unsigned> b(key.begin() + n_, key.end());
            fn(a, b, coef);
        }
    }

private:
    void add_term(const std::vector<unsigned>& tpow, const std::vector<unsigned>& dpow,
                  const SpectralPoly& c);

    std::size_t n_ = 0;
    // key: t exponents followed by d exponents (length 2n)
    std::map<std::vector<unsigned>, SpectralPoly> terms_;
};

WeylElement weyl_product(const WeylElement& a, const WeylElement& b);
WeylElement commutator(const WeylElement& a, const WeylElement& b);

/// Oscillator generators: the central element, the lowering family (acting
/// as -d/dt_i), the raising family (acting as -t_i or +t_i in the dual) and
/// the grading family (Euler operator plus spectral constant).
enum class GeneratorKind { center, lowering, raising, grading };

struct Generator {
    GeneratorKind kind;
    std::size_t index = 0;  // ignored for the center
};

/// Spectral assignment for the representation maps: either the formal
/// symbols themselves or fixed rational values.
struct SpectralAssignment {
    static SpectralAssignment formal(std::size_t n);
    static SpectralAssignment numeric(std::vector<Rat> values);

    std::size_t size() const { return n_; }
    SpectralPoly component(std::size_t i) const;

private:
    std::size_t n_ = 0;
    bool formal_ = false;
    std::vector<Rat> values_;
};

/// Defining representation on functions of t: center -> 1, lowering_i ->
/// -d_i, raising_i -> -t_i, grading_i -> gamma_i + t_i d_i.
WeylElement represent(const Generator& g, const SpectralAssignment& gamma);

/// Contragredient counterpart: center -> -1, lowering_i -> -d_i,
/// raising_i -> +t_i, grading_i -> (1 - gamma_i) + t_i d_i.
WeylElement represent_dual(const Generator& g, const SpectralAssignment& gamma);

/// Image under `represent` of the two-sided annihilation element attached to
/// an integer vector l: ordered products of raising/lowering pairs on the
/// support of one sign against falling factorials of the grading family on
/// the other, antisymmetrized.  Its image vanishes identically.
WeylElement casimir_image(const std::vector<long long>& l, const SpectralAssignment& gamma);

/// True when casimir_image(l, gamma) reduces to the empty (zero) element.
bool verify_annihilation(const std::vector<long long>& l, const SpectralAssignment& gamma);

/// Exact operator identity prod_{k=0}^{n-1} (t d - k) = t^n d^n in one
/// variable, checked in the engine for the given power.
bool euler_identity_check(unsigned n);

/// Separable test function c * prod_i t_i^{p_i} exp(-q_i t_i); the class the
/// raising/lowering/grading operators and the torus dilations preserve.
struct SeparableExponential {
    Complex coef{1.0, 0.0};
    std::vector<unsigned> powers;  // p_i >= 0
    std::vector<double> qs;        // q_i > 0
};

/// Apply a Weyl element with numeric spectral coefficients to a separable
/// exponential; the result is a finite sum of the same shape.
std::vector<SeparableExponential> apply_weyl(const WeylElement& w, const SeparableExponential& f);

/// Left-functional pairing against f: the delta-constrained torus integral
/// of t^gamma times f over the positive orthant (deltas centered at t = 1).
/// Evaluated with the mode-centered quadrature of the evaluation layer.
Complex phiL_pairing(const GkzData& data, const SpectralVector& gamma,
                     const SeparableExponential& f, const QuadratureConfig& cfg = {});

} // namespace gkz
