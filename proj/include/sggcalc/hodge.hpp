#pragma once

#include "sggcalc/cohomology.hpp"

namespace sgg {

// Exact Gram matrices of the inner product induced by a real positive
// definite invariant metric, one per bidegree, built from minors of the
// inverse metric matrix. Total volume is normalized to 1.
class InnerProduct {
  public:
    InnerProduct(const CEComplex& c, const Form& omega);
    const Matrix& gram(int p, int q) const;
    const Form& metric() const { return omega_; }

  private:
    Form omega_;
    std::vector<std::vector<Matrix>> grams_;
};

Matrix gram_matrix(const CEComplex& c, const Form& omega, int p, int q);

// Adjoint of an operator block w.r.t. the source/target Grams:
// M* = G_src^{-1} M^H G_dst.
Matrix adjoint(const Matrix& m, const Matrix& g_src, const Matrix& g_dst);

// G-orthogonal projection of x in ker(partial dbar) onto the complement of
// Im partial + Im dbar; the output is annihilated by partial dbar, partial*
// and dbar*, all exactly.
Form aeppli_harmonic_projection(const CEComplex& c, const InnerProduct& ip, const Form& x);

// The minimal-norm solution x of dbar x = y (y must be dbar-exact), obtained
// through the dbar-Laplacian; x is exactly G-orthogonal to ker dbar.
Form dbar_minimal_solution(const CEComplex& c, const InnerProduct& ip, const Form& y);

struct FakeDecomposition {
    Matrix p_mat;   // H^{2n-2}_DR(R) -> H^{n-1,n-1}_A(R)
    Matrix q_mat;   // H^{n-1,n-1}_A(R) -> H^{2n-2}_DR(R)
    Matrix p_star;  // H^{1,1}_BC(R) -> H^2_DR(R)
    Matrix q_star;  // H^2_DR(R) -> H^{1,1}_BC(R)
    std::vector<Form> assembled;  // d-closed real representatives, one per real Aeppli class
};

// The section pair (P, Q_omega) and its dual pair, all verified exactly:
// P Q = Id, Q* P* = Id, every assembled form real and d-closed. Requires an
// sGG structure.
FakeDecomposition build_fake_decomposition(const CEComplex& c, const Form& omega);

struct TransportRow {
    GaussianRational t;
    bool frame_ok = false;
    bool pd = false;
    bool gauduchon = false;
    Form component_in_frame;
    std::string note;
};

struct TransportReport {
    bool d_closed = false;
    std::string note;
    Form assembled;
    std::vector<TransportRow> rows;
};

// Transport of a Gauduchon class across a family: assemble the d-closed
// extension of gamma0^{n-1} at t=0 (falling back to the bare power when the
// base obstructs the dbar-equation), then at each sample t split by the
// t-bigrading and test the (n-1,n-1)_t component for positivity and the
// Gauduchon condition, exactly.
TransportReport transport_gauduchon(const FamilySpec& f, const Form& gamma0, const Form& omega0,
                                    const std::vector<GaussianRational>& t_samples);

}  // namespace sgg
