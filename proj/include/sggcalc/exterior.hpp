#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "sggcalc/matrix.hpp"
#include "sggcalc/rational.hpp"

namespace sgg {

// Canonical monomial of the bigraded exterior algebra: strictly increasing
// holomorphic indices first, then strictly increasing antiholomorphic ones.
struct MultiIndex {
    std::vector<uint8_t> holo;
    std::vector<uint8_t> anti;

    int p() const { return static_cast<int>(holo.size()); }
    int q() const { return static_cast<int>(anti.size()); }
    int degree() const { return p() + q(); }

    auto operator<=>(const MultiIndex&) const = default;
};

// Sparse exterior-algebra element; zero coefficients are never stored.
struct Form {
    int n = 0;
    std::map<MultiIndex, GaussianRational> terms;

    explicit Form(int dim = 0) : n(dim) {}
    static Form scalar(int dim, const GaussianRational& c);
    static Form monomial(int dim, const MultiIndex& mi, const GaussianRational& c);

    bool is_zero() const { return terms.empty(); }
    void add_term(const MultiIndex& mi, const GaussianRational& c);
    // True when every monomial has bidegree (p,q) (a zero form is pure).
    bool pure_bidegree(int p, int q) const;

    friend Form operator+(const Form& a, const Form& b);
    friend Form operator-(const Form& a, const Form& b);
    Form operator-() const;
    Form scaled(const GaussianRational& c) const;
    bool operator==(const Form&) const = default;
};

// Ordered monomial basis of Lambda^{p,q}; deterministic lexicographic order,
// size C(n,p)*C(n,q). Out-of-range bidegrees are an error.
std::vector<MultiIndex> basis(int n, int p, int q);

// Exact graded-anticommutative product.
Form wedge(const Form& a, const Form& b);
Form wedge_power(const Form& a, int k);

// Antilinear involution swapping (p,q) -> (q,p) with exact sign bookkeeping.
Form conjugate_form(const Form& a);
bool is_real_form(const Form& a);

// The (p,q)-part of a mixed form.
Form component(const Form& a, int p, int q);

// Coordinates of a pure (p,q)-form in basis(n,p,q), and back.
Vec form_to_vec(const Form& a, int p, int q);
Form vec_to_form(int n, const Vec& v, int p, int q);

// The calibrated positive volume form: the canonical top monomial scaled by
// the unit power of i that makes (i eta^{11bar})^...^(i eta^{nnbar}) a
// positive multiple of it.
Form volume_form(int n);
// Coefficient of a on the calibrated volume form (the normalized integral).
GaussianRational top_coefficient(const Form& a);

// H with a = i * sum H[j,k] eta^j ^ eta^{kbar}; requires pure bidegree (1,1).
Matrix hermitian_matrix_of_11(const Form& a);
Form form_of_hermitian_11(int n, const Matrix& h);

// H[j,k] defined by a ^ (i eta^j ^ eta^{kbar}) = H[j,k] * vol; requires pure
// bidegree (n-1,n-1). Calibrated so powers of positive (1,1)-forms map to
// positive definite matrices.
Matrix hermitian_matrix_of_n1n1(const Form& a);
Form form_of_hermitian_n1n1(int n, const Matrix& h);

// Rendering in the eta^{1,2|1bar} style used by reports.
std::string render_form(const Form& a);
std::string render_multi_index(const MultiIndex& mi);

}  // namespace sgg
