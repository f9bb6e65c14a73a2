#include "sggcalc/metrics.hpp"

#include <random>

namespace sgg {

MetricFlags check_metric(const CEComplex& c, const Form& omega) {
    int n = c.n();
    if (!omega.pure_bidegree(1, 1)) throw math_error("check_metric: metric must be a (1,1)-form");
    if (!is_real_form(omega)) throw math_error("check_metric: metric must be real");
    MetricFlags flags;
    flags.positive = is_pos_def_hermitian(hermitian_matrix_of_11(omega));

    const StructureEquations& s = c.eq();
    Form power = wedge_power(omega, n - 1);
    Form d_power = apply_d(s, power);
    Form del_power = apply_op(s, Op::partial, power);

    flags.balanced = d_power.is_zero();
    flags.gauduchon = apply_op(s, Op::partial, apply_op(s, Op::dbar, power)).is_zero();
    Vec y = form_to_vec(del_power, n, n - 1);
    flags.strongly_gauduchon = mat_solve(c.block(Op::dbar, n, n - 2), y).has_value();
    flags.superstrong = mat_solve(c.ddbar_block(n - 1, n - 2), y).has_value();

    // balanced => superstrong => strongly Gauduchon => Gauduchon.
    if ((flags.balanced && !flags.superstrong) || (flags.superstrong && !flags.strongly_gauduchon) ||
        (flags.strongly_gauduchon && !flags.gauduchon))
        throw math_error("internal: metric flag implication chain violated");
    return flags;
}

bool ddbar_vanishing(const CEComplex& c, int p, int q) { return c.ddbar_block(p, q).is_zero(); }

namespace {

// Real parametrization of Hermitian n x n matrices: diagonal units, then
// for j<k the pair E_jk + E_kj and i(E_jk - E_kj).
std::vector<Matrix> hermitian_param_basis(int n) {
    std::vector<Matrix> out;
    for (int j = 0; j < n; j++) {
        Matrix m(n, n);
        m.at(j, j) = GaussianRational(1);
        out.push_back(std::move(m));
    }
    for (int j = 0; j < n; j++)
        for (int k = j + 1; k < n; k++) {
            Matrix re(n, n);
            re.at(j, k) = GaussianRational(1);
            re.at(k, j) = GaussianRational(1);
            out.push_back(std::move(re));
            Matrix im(n, n);
            im.at(j, k) = GaussianRational::i();
            im.at(k, j) = -GaussianRational::i();
            out.push_back(std::move(im));
        }
    return out;
}

Matrix combine(const std::vector<Matrix>& basis_mats, const Vec& coeffs) {
    int n = basis_mats.front().rows;
    Matrix h(n, n);
    for (size_t k = 0; k < basis_mats.size(); k++) {
        if (coeffs[k].is_zero()) continue;
        for (int i = 0; i < n; i++)
            for (int j = 0; j < n; j++) h.at(i, j) += basis_mats[k].at(i, j) * coeffs[k];
    }
    return h;
}

// Trace pairing tr(C H) for Hermitian C, H (a real value).
Rational trace_pairing(const Matrix& cmat, const Matrix& h) {
    GaussianRational s;
    for (int i = 0; i < cmat.rows; i++)
        for (int j = 0; j < cmat.cols; j++) s += cmat.at(i, j) * h.at(j, i);
    if (s.im != 0) throw math_error("internal: trace pairing of Hermitian matrices must be real");
    return s.re;
}

// Residual operator for the kind's linear condition on (n-1,n-1)-forms.
Vec condition_residual(const CEComplex& c, MetricKind kind, const Form& omega_mid) {
    int n = c.n();
    const StructureEquations& s = c.eq();
    switch (kind) {
        case MetricKind::gauduchon: {
            Form r = apply_op(s, Op::partial, apply_op(s, Op::dbar, omega_mid));
            return form_to_vec(r, n, n);
        }
        case MetricKind::balanced: {
            Form dp = apply_op(s, Op::partial, omega_mid);
            Form db = apply_op(s, Op::dbar, omega_mid);
            Vec v = form_to_vec(dp, n, n - 1);
            Vec w = form_to_vec(db, n - 1, n);
            v.insert(v.end(), w.begin(), w.end());
            return v;
        }
        case MetricKind::sG:
        case MetricKind::supersG: {
            Vec y = form_to_vec(apply_op(s, Op::partial, omega_mid), n, n - 1);
            Matrix b = kind == MetricKind::sG ? c.block(Op::dbar, n, n - 2) : c.ddbar_block(n - 1, n - 2);
            Matrix bb = col_space_basis(b);
            Matrix comp = complement_cols(bb, Matrix::identity(c.pq_dim(n, n - 1)));
            auto sol = mat_solve(hstack(bb, comp), y);
            if (!sol) throw math_error("internal: (n,n-1) space decomposition failed");
            return Vec(sol->begin() + bb.cols, sol->end());
        }
    }
    throw math_error("unknown metric kind");
}

}  // namespace

std::vector<Matrix> feasibility_subspace(const CEComplex& c, MetricKind kind) {
    int n = c.n();
    std::vector<Matrix> herm = hermitian_param_basis(n);
    int params = static_cast<int>(herm.size());
    // Real linear system: split each complex residual into re/im rows.
    std::vector<Vec> residuals;
    for (const auto& hb : herm)
        residuals.push_back(condition_residual(c, kind, form_of_hermitian_n1n1(n, hb)));
    int m = static_cast<int>(residuals.front().size());
    Matrix sys(2 * m, params);
    for (int k = 0; k < params; k++)
        for (int i = 0; i < m; i++) {
            sys.at(i, k) = GaussianRational(residuals[k][i].re);
            sys.at(m + i, k) = GaussianRational(residuals[k][i].im);
        }
    std::vector<Vec> kernel = mat_kernel(sys);
    std::vector<Matrix> v_basis;
    for (const Vec& kv : kernel) {
        for (const auto& x : kv)
            if (x.im != 0) throw math_error("internal: real kernel acquired imaginary parts");
        v_basis.push_back(combine(herm, kv));
    }
    return v_basis;
}

const char* metric_kind_name(MetricKind k) {
    switch (k) {
        case MetricKind::gauduchon: return "gauduchon";
        case MetricKind::sG: return "sG";
        case MetricKind::supersG: return "supersG";
        case MetricKind::balanced: return "balanced";
    }
    return "?";
}

FeasibilityAnswer positive_feasibility(const CEComplex& c, MetricKind kind) {
    int n = c.n();
    if (n > 4) throw math_error("positive_feasibility: supported for n <= 4");
    std::vector<Matrix> v = feasibility_subspace(c, kind);
    FeasibilityAnswer ans;

    // Parameter coordinates of a Hermitian matrix.
    std::vector<Matrix> herm = hermitian_param_basis(n);
    auto param_of = [&](const Matrix& h) {
        Vec x;
        for (int j = 0; j < n; j++) x.push_back(h.at(j, j));
        for (int j = 0; j < n; j++)
            for (int k = j + 1; k < n; k++) {
                x.push_back(GaussianRational(h.at(j, k).re));
                x.push_back(GaussianRational(h.at(j, k).im));
            }
        return x;
    };
    std::vector<Vec> v_params;
    for (const auto& hm : v) v_params.push_back(param_of(hm));
    Matrix v_mat = Matrix::from_cols(v_params, static_cast<int>(herm.size()));

    auto accept_witness = [&](const Matrix& h) {
        if (!in_span(v_mat, param_of(h))) return false;
        if (!is_pos_def_hermitian(h)) return false;
        Form w = form_of_hermitian_n1n1(n, h);
        // Exact re-verification: membership and positivity.
        Vec resid = condition_residual(c, kind, w);
        for (const auto& x : resid)
            if (!x.is_zero()) throw math_error("internal: feasibility witness failed the condition re-check");
        ans.status = FeasibilityAnswer::Status::witness;
        ans.witness = w;
        return true;
    };

    // Stage 1: canonical candidates (powers of simple metrics and plain PD
    // matrices).
    std::vector<Matrix> candidates;
    Form std_metric(n);
    for (int j = 1; j <= n; j++)
        std_metric.add_term(MultiIndex{{static_cast<uint8_t>(j)}, {static_cast<uint8_t>(j)}}, GaussianRational::i());
    candidates.push_back(hermitian_matrix_of_n1n1(wedge_power(std_metric, n - 1)));
    candidates.push_back(Matrix::identity(n));
    Matrix diag = Matrix::identity(n);
    for (int j = 0; j < n; j++) diag.at(j, j) = GaussianRational(j + 1);
    candidates.push_back(diag);
    for (const auto& h : candidates)
        if (accept_witness(h)) return ans;

    // Stage 2: projection of the identity onto V under the trace pairing.
    if (!v.empty()) {
        int dimv = static_cast<int>(v.size());
        Matrix normal(dimv, dimv);
        Vec rhs(dimv);
        for (int a = 0; a < dimv; a++) {
            for (int b = 0; b < dimv; b++) normal.at(a, b) = GaussianRational(trace_pairing(v[a], v[b]));
            rhs[a] = GaussianRational(trace_pairing(v[a], Matrix::identity(n)));
        }
        auto sol = mat_solve(normal, rhs);
        if (sol && accept_witness(combine(v, *sol))) return ans;
    }

    // Stage 3: a documented finite rational grid over the V basis
    // (deterministic order; exhaustive for small dim V, pseudo-random with a
    // fixed seed otherwise).
    int dimv = static_cast<int>(v.size());
    std::vector<Vec> grid;
    const std::vector<GaussianRational> small = {GaussianRational(-2), GaussianRational(-1), GaussianRational(0),
                                                 GaussianRational(1), GaussianRational(2)};
    if (dimv > 0 && dimv <= 4) {
        Vec cur(dimv);
        std::function<void(int)> rec = [&](int idx) {
            if (idx == dimv) {
                grid.push_back(cur);
                return;
            }
            for (const auto& cc : small) {
                cur[idx] = cc;
                rec(idx + 1);
            }
        };
        rec(0);
    } else if (dimv > 4) {
        for (int a = 0; a < dimv; a++)
            for (const auto& cc : {GaussianRational(1), GaussianRational(-1)}) {
                Vec x(dimv);
                x[a] = cc;
                grid.push_back(x);
            }
        std::mt19937 rng(20140915);
        for (int trial = 0; trial < 400; trial++) {
            Vec x(dimv);
            for (auto& xx : x) xx = small[rng() % small.size()];
            grid.push_back(x);
        }
    }
    for (const Vec& g : grid) {
        Matrix h = combine(v.empty() ? herm : v, v.empty() ? Vec(herm.size()) : g);
        if (h.rows == 0) continue;
        bool pd;
        try {
            pd = is_pos_def_hermitian(h);
        } catch (const math_error&) {
            pd = false;
        }
        if (pd && accept_witness(h)) return ans;
    }

    // Stage 4: separation. Search the trace-orthogonal complement of V for a
    // nonzero PSD element; its existence proves no PD element of V exists.
    auto is_certificate = [&](const Matrix& cand) {
        if (cand.is_zero()) return false;
        for (const auto& vb : v)
            if (trace_pairing(cand, vb) != 0) return false;
        return is_psd_hermitian(cand);
    };
    std::vector<Matrix> cert_candidates;
    // Rank-one candidates w w^H over a small Gaussian-integer grid.
    std::vector<GaussianRational> entries = {GaussianRational(0), GaussianRational(1), GaussianRational(-1),
                                             GaussianRational::i(), -GaussianRational::i(),
                                             GaussianRational(1) + GaussianRational::i()};
    std::vector<Vec> vecs;
    std::function<void(Vec&, int)> gen = [&](Vec& cur, int idx) {
        if (idx == n) {
            vecs.push_back(cur);
            return;
        }
        for (const auto& e : entries) {
            cur.push_back(e);
            gen(cur, idx + 1);
            cur.pop_back();
        }
    };
    Vec cur;
    gen(cur, 0);
    for (const Vec& w : vecs) {
        Matrix rank1(n, n);
        for (int i = 0; i < n; i++)
            for (int j = 0; j < n; j++) rank1.at(i, j) = w[i] * w[j].conj();
        cert_candidates.push_back(std::move(rank1));
    }
    // Diagonal 0/1 patterns.
    for (int mask = 1; mask < (1 << n); mask++) {
        Matrix d(n, n);
        for (int j = 0; j < n; j++)
            if (mask & (1 << j)) d.at(j, j) = GaussianRational(1);
        cert_candidates.push_back(std::move(d));
    }
    for (const auto& cand : cert_candidates) {
        if (is_certificate(cand)) {
            ans.status = FeasibilityAnswer::Status::infeasible;
            ans.certificate = cand;
            return ans;
        }
    }
    ans.status = FeasibilityAnswer::Status::undecided;
    return ans;
}

}  // namespace sgg
