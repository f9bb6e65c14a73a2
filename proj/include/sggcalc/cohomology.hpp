#pragma once

#include <functional>
#include <string>
#include <vector>

#include "sggcalc/structure.hpp"

namespace sgg {

// A structure with all operator blocks and total-complex differentials
// precomputed; immutable after construction.
class CEComplex {
  public:
    explicit CEComplex(StructureEquations s);

    const StructureEquations& eq() const { return s_; }
    int n() const { return s_.n; }
    const ValidationReport& report() const { return rep_; }

    int pq_dim(int p, int q) const;
    // Operator block in the canonical monomial bases; out-of-range source or
    // target bidegrees give zero-sized matrices.
    const Matrix& block(Op op, int p, int q) const;
    // partial then dbar stacked: (p,q) -> (p+1,q) (+) (p,q+1).
    Matrix d_block_stacked(int p, int q) const;
    // partial o dbar block (p,q) -> (p+1,q+1).
    Matrix ddbar_block(int p, int q) const;

    // Total complex: degree-m coordinates are the (p, m-p) blocks
    // concatenated with p ascending.
    int deg_dim(int m) const;
    const Matrix& total_d(int m) const;  // Lambda^m -> Lambda^{m+1}
    int total_offset(int p, int q) const;
    Vec to_total(const Form& f, int m) const;
    Form from_total(const Vec& v, int m) const;

    // Conjugation on coordinates (antilinear, exact signs).
    Vec conj_total(const Vec& v, int m) const;
    Vec conj_pq(const Vec& v, int p, int q) const;  // lands in (q,p) coordinates

  private:
    StructureEquations s_;
    ValidationReport rep_;
    std::vector<std::vector<Matrix>> partial_, dbar_;  // [p][q]
    std::vector<Matrix> total_;                        // [m], m = 0..2n
    Matrix zero_;
};

// Quotient of span(cycles) by span(boundaries), with explicit complement
// representatives; class coordinates are exact.
struct QuotientSpace {
    int ambient = 0;
    Matrix cycles;
    Matrix boundaries;
    Matrix reps;

    int dim() const { return reps.cols; }
    // Coordinates of the class of z (z must lie in span(cycles)).
    Vec coords(const Vec& z) const;
    Vec rep_of(const Vec& class_coords) const;
};

// Verifies span(boundaries_raw) is contained in span(cycles).
QuotientSpace make_quotient(const Matrix& cycles, const Matrix& boundaries_raw);

QuotientSpace dolbeault_space(const CEComplex& c, int p, int q);
QuotientSpace bott_chern_space(const CEComplex& c, int p, int q);
QuotientSpace aeppli_space(const CEComplex& c, int p, int q);
QuotientSpace de_rham_space(const CEComplex& c, int k);

int hodge_number(const CEComplex& c, int p, int q);
int bc_number(const CEComplex& c, int p, int q);
int aeppli_number(const CEComplex& c, int p, int q);
int betti(const CEComplex& c, int k);

// A conj-fixed class basis (columns, in class coordinates) of a conj-stable
// quotient space; class_conj must implement the induced antilinear map.
Matrix real_class_basis(const QuotientSpace& qs, const std::function<Vec(const Vec&)>& class_conj);

using PageTable = std::vector<std::vector<int>>;  // [p][q]

struct FroelicherResult {
    std::vector<PageTable> pages;  // pages[r-1], r = 1..2n+1
    int degeneration_step = 0;
};

// Standard filtered-total-complex construction (filtration by holomorphic
// degree). Asserts E_1 = Dolbeault and sum over p+q=k of E_infinity = b_k.
FroelicherResult froelicher_pages(const CEComplex& c);

struct SggVerdict {
    int t_rank = 0;
    bool crit_bc = false;     // h^{0,1}_BC == h^{0,1}_dbar
    bool crit_betti = false;  // b_1 == 2 h^{0,1}_dbar
    bool sgg = false;         // t_rank == 0
};

// Computes all three criteria; on unimodular inputs their pairwise agreement
// is hard-asserted (disagreement would be an implementation bug).
SggVerdict sgg_verdict(const CEComplex& c);

struct MapsReport {
    Matrix t, s, s_star, t_star, f, p;  // p over the real class bases
    int rank_t = 0, rank_s = 0, dim_ker_s = 0;
    int rank_s_star = 0, rank_t_star = 0, rank_f = 0, rank_p = 0;
    int dim_a_top = 0;  // h^{n,n-1}_A
    bool s_surjective = false;
    bool exact_t_s = false;          // Im T = ker S, double inclusion + dims
    bool s_star_injective = false;
    bool exact_s_star_t_star = false;
    bool f_injective = false;
    bool p_surjective = false;
};

MapsReport canonical_maps(const CEComplex& c);

struct CohomologyProfile {
    std::string name;
    int n = 0;
    bool unimodular = false, nilpotent = false;
    std::vector<int> betti;                  // k = 0..2n
    std::vector<std::vector<int>> hodge, bc, aeppli;  // [p][q]
    std::vector<PageTable> e_pages;
    int degeneration_step = 0;
    int rank_t = 0, rank_s = 0, rank_s_star = 0, rank_t_star = 0, rank_f = 0, rank_p = 0;
    SggVerdict sgg;
};

CohomologyProfile compute_profile(const CEComplex& c, const std::string& name);

}  // namespace sgg
