#include "sggcalc/cohomology.hpp"

#include <algorithm>
#include <map>

namespace sgg {

namespace {
int binom_dim(int n, int p, int q) {
    if (p < 0 || q < 0 || p > n || q > n) return 0;
    auto choose = [](int nn, int kk) {
        long v = 1;
        for (int i = 0; i < kk; i++) v = v * (nn - i) / (i + 1);
        return static_cast<int>(v);
    };
    return choose(n, p) * choose(n, q);
}
}  // namespace

CEComplex::CEComplex(StructureEquations s) : s_(std::move(s)) {
    rep_ = validate(s_);
    if (!rep_.ok) {
        std::string msg = "invalid structure equations";
        for (const auto& p : rep_.problems) msg += "; " + p;
        throw validation_error(msg);
    }
    int n = s_.n;
    partial_.assign(n + 1, std::vector<Matrix>(n + 1));
    dbar_.assign(n + 1, std::vector<Matrix>(n + 1));
    for (int p = 0; p <= n; p++)
        for (int q = 0; q <= n; q++) {
            partial_[p][q] = operator_matrix(s_, Op::partial, p, q);
            dbar_[p][q] = operator_matrix(s_, Op::dbar, p, q);
        }
    // Exact operator identities in every bidegree.
    for (int p = 0; p <= n; p++)
        for (int q = 0; q <= n; q++) {
            if (p + 1 <= n && !(block(Op::partial, p + 1, q) * block(Op::partial, p, q)).is_zero())
                throw math_error("internal: partial^2 != 0");
            if (q + 1 <= n && !(block(Op::dbar, p, q + 1) * block(Op::dbar, p, q)).is_zero())
                throw math_error("internal: dbar^2 != 0");
            if (p + 1 <= n && q + 1 <= n) {
                Matrix anti = block(Op::partial, p, q + 1) * block(Op::dbar, p, q) +
                              block(Op::dbar, p + 1, q) * block(Op::partial, p, q);
                if (!anti.is_zero()) throw math_error("internal: partial dbar + dbar partial != 0");
            }
        }
    total_.resize(2 * n + 1);
    for (int m = 0; m <= 2 * n; m++) {
        Matrix d(deg_dim(m + 1), deg_dim(m));
        for (int p = std::max(0, m - n); p <= std::min(n, m); p++) {
            int q = m - p;
            int src_off = total_offset(p, q);
            int src_len = pq_dim(p, q);
            for (auto op : {Op::partial, Op::dbar}) {
                int tp = op == Op::partial ? p + 1 : p;
                int tq = op == Op::partial ? q : q + 1;
                if (tp > n || tq > n) continue;
                const Matrix& blk = block(op, p, q);
                int dst_off = total_offset(tp, tq);
                for (int i = 0; i < blk.rows; i++)
                    for (int jj = 0; jj < src_len; jj++) d.at(dst_off + i, src_off + jj) = blk.at(i, jj);
            }
        }
        total_[m] = std::move(d);
    }
}

int CEComplex::pq_dim(int p, int q) const { return binom_dim(s_.n, p, q); }

const Matrix& CEComplex::block(Op op, int p, int q) const {
    if (op == Op::d) throw math_error("CEComplex::block takes partial/dbar");
    static const Matrix empty;
    if (p < 0 || q < 0 || p > s_.n || q > s_.n) return empty;
    return op == Op::partial ? partial_[p][q] : dbar_[p][q];
}

Matrix CEComplex::d_block_stacked(int p, int q) const {
    Matrix a = block(Op::partial, p, q);
    Matrix b = block(Op::dbar, p, q);
    if (a.cols == 0 && b.cols == 0) return Matrix(0, pq_dim(p, q));
    if (a.rows == 0) a = Matrix(0, pq_dim(p, q));
    if (b.rows == 0) b = Matrix(0, pq_dim(p, q));
    return vstack(a, b);
}

Matrix CEComplex::ddbar_block(int p, int q) const {
    int n = s_.n;
    if (p < 0 || q < 0 || p + 1 > n || q + 1 > n) return Matrix(binom_dim(n, p + 1, q + 1), binom_dim(n, p, q));
    return block(Op::partial, p, q + 1) * block(Op::dbar, p, q);
}

int CEComplex::deg_dim(int m) const {
    if (m < 0 || m > 2 * s_.n) return 0;
    int d = 0;
    for (int p = std::max(0, m - s_.n); p <= std::min(s_.n, m); p++) d += pq_dim(p, m - p);
    return d;
}

const Matrix& CEComplex::total_d(int m) const {
    static const Matrix empty;
    if (m < 0 || m > 2 * s_.n) return empty;
    return total_[m];
}

int CEComplex::total_offset(int p, int q) const {
    int m = p + q;
    int off = 0;
    for (int pp = std::max(0, m - s_.n); pp < p; pp++) off += pq_dim(pp, m - pp);
    return off;
}

Vec CEComplex::to_total(const Form& f, int m) const {
    Vec v(deg_dim(m));
    for (const auto& [mi, c] : f.terms) {
        if (mi.degree() != m) throw math_error("to_total: mixed degree form");
        std::vector<MultiIndex> b = basis(s_.n, mi.p(), mi.q());
        auto it = std::lower_bound(b.begin(), b.end(), mi);
        v[total_offset(mi.p(), mi.q()) + static_cast<int>(it - b.begin())] = c;
    }
    return v;
}

Form CEComplex::from_total(const Vec& v, int m) const {
    Form f(s_.n);
    for (int p = std::max(0, m - s_.n); p <= std::min(s_.n, m); p++) {
        int q = m - p;
        std::vector<MultiIndex> b = basis(s_.n, p, q);
        int off = total_offset(p, q);
        for (size_t i = 0; i < b.size(); i++) f.add_term(b[i], v[off + i]);
    }
    return f;
}

Vec CEComplex::conj_pq(const Vec& v, int p, int q) const {
    std::vector<MultiIndex> src = basis(s_.n, p, q);
    std::vector<MultiIndex> dst = basis(s_.n, q, p);
    Vec out(dst.size());
    int sign = (p * q) % 2 == 0 ? 1 : -1;
    for (size_t i = 0; i < src.size(); i++) {
        if (v[i].is_zero()) continue;
        MultiIndex m{src[i].anti, src[i].holo};
        auto it = std::lower_bound(dst.begin(), dst.end(), m);
        out[it - dst.begin()] += v[i].conj() * GaussianRational(sign);
    }
    return out;
}

Vec CEComplex::conj_total(const Vec& v, int m) const {
    Vec out(deg_dim(m));
    for (int p = std::max(0, m - s_.n); p <= std::min(s_.n, m); p++) {
        int q = m - p;
        int off = total_offset(p, q);
        Vec blockv(pq_dim(p, q));
        for (int i = 0; i < pq_dim(p, q); i++) blockv[i] = v[off + i];
        Vec cb = conj_pq(blockv, p, q);
        int off2 = total_offset(q, p);
        for (size_t i = 0; i < cb.size(); i++) out[off2 + i] += cb[i];
    }
    return out;
}

Vec QuotientSpace::coords(const Vec& z) const {
    auto sol = mat_solve(hstack(boundaries, reps), z);
    if (!sol) throw math_error("class coordinates: vector is not a cycle of this space");
    return Vec(sol->begin() + boundaries.cols, sol->end());
}

Vec QuotientSpace::rep_of(const Vec& class_coords) const { return reps.apply(class_coords); }

QuotientSpace make_quotient(const Matrix& cycles, const Matrix& boundaries_raw) {
    QuotientSpace qs;
    qs.ambient = cycles.rows;
    qs.cycles = cycles;
    qs.boundaries = col_space_basis(boundaries_raw);
    for (int j = 0; j < qs.boundaries.cols; j++)
        if (!in_span(cycles, qs.boundaries.col(j)))
            throw math_error("quotient: boundaries are not contained in cycles");
    qs.reps = complement_cols(qs.boundaries, cycles);
    return qs;
}

QuotientSpace dolbeault_space(const CEComplex& c, int p, int q) {
    Matrix z = Matrix::from_cols(mat_kernel(c.block(Op::dbar, p, q)), c.pq_dim(p, q));
    Matrix b = c.block(Op::dbar, p, q - 1);
    if (b.rows == 0) b = Matrix(c.pq_dim(p, q), 0);
    return make_quotient(z, b);
}

QuotientSpace bott_chern_space(const CEComplex& c, int p, int q) {
    Matrix z = Matrix::from_cols(mat_kernel(c.d_block_stacked(p, q)), c.pq_dim(p, q));
    Matrix b = c.ddbar_block(p - 1, q - 1);
    if (b.rows == 0) b = Matrix(c.pq_dim(p, q), 0);
    return make_quotient(z, b);
}

QuotientSpace aeppli_space(const CEComplex& c, int p, int q) {
    Matrix z = Matrix::from_cols(mat_kernel(c.ddbar_block(p, q)), c.pq_dim(p, q));
    Matrix bp = c.block(Op::partial, p - 1, q);
    if (bp.rows == 0) bp = Matrix(c.pq_dim(p, q), 0);
    Matrix bq = c.block(Op::dbar, p, q - 1);
    if (bq.rows == 0) bq = Matrix(c.pq_dim(p, q), 0);
    return make_quotient(z, hstack(bp, bq));
}

QuotientSpace de_rham_space(const CEComplex& c, int k) {
    Matrix z = Matrix::from_cols(mat_kernel(c.total_d(k)), c.deg_dim(k));
    Matrix b = k >= 1 ? c.total_d(k - 1) : Matrix(c.deg_dim(0), 0);
    return make_quotient(z, b);
}

int hodge_number(const CEComplex& c, int p, int q) { return dolbeault_space(c, p, q).dim(); }
int bc_number(const CEComplex& c, int p, int q) { return bott_chern_space(c, p, q).dim(); }
int aeppli_number(const CEComplex& c, int p, int q) { return aeppli_space(c, p, q).dim(); }
int betti(const CEComplex& c, int k) { return de_rham_space(c, k).dim(); }

Matrix real_class_basis(const QuotientSpace& qs, const std::function<Vec(const Vec&)>& class_conj) {
    int d = qs.dim();
    std::vector<Vec> chosen;
    auto try_add = [&](const Vec& v) {
        bool zero = std::all_of(v.begin(), v.end(), [](const GaussianRational& x) { return x.is_zero(); });
        if (zero || static_cast<int>(chosen.size()) == d) return;
        std::vector<Vec> cand = chosen;
        cand.push_back(v);
        if (mat_rank(Matrix::from_cols(cand, d)) > static_cast<int>(chosen.size())) chosen.push_back(v);
    };
    for (int j = 0; j < d && static_cast<int>(chosen.size()) < d; j++) {
        Vec e(d);
        e[j] = GaussianRational(1);
        Vec sig = class_conj(e);
        Vec plus(d), minus(d);
        for (int i = 0; i < d; i++) {
            plus[i] = e[i] + sig[i];
            minus[i] = (e[i] - sig[i]) * GaussianRational::i();
        }
        try_add(plus);
        try_add(minus);
    }
    if (static_cast<int>(chosen.size()) != d) throw math_error("real_class_basis: space is not conj-stable");
    for (const Vec& v : chosen) {
        if (class_conj(v) != v) throw math_error("real_class_basis: candidate is not conj-fixed");
    }
    return Matrix::from_cols(chosen, d);
}

namespace {

// Z_r at filtration level p in total degree m: {x in F^p : dx in F^{p+r}}.
struct ZCache {
    const CEComplex& c;
    std::map<std::tuple<int, int, int>, Matrix> memo;

    Matrix filtration_incl(int p, int m) {
        int n = c.n();
        std::vector<Vec> cols;
        int dim = c.deg_dim(m);
        for (int pp = std::max(0, m - n); pp <= std::min(n, m); pp++) {
            if (pp < p) continue;
            int off = c.total_offset(pp, m - pp);
            for (int i = 0; i < c.pq_dim(pp, m - pp); i++) {
                Vec e(dim);
                e[off + i] = GaussianRational(1);
                cols.push_back(std::move(e));
            }
        }
        return Matrix::from_cols(cols, dim);
    }

    // Projection of degree-(m) coordinates onto the blocks with holomorphic
    // degree strictly below p_hi.
    Matrix proj_low(int p_hi, int m) {
        int n = c.n();
        std::vector<Vec> rows;
        int dim = c.deg_dim(m);
        for (int pp = std::max(0, m - n); pp <= std::min(n, m); pp++) {
            if (pp >= p_hi) continue;
            int off = c.total_offset(pp, m - pp);
            for (int i = 0; i < c.pq_dim(pp, m - pp); i++) {
                Vec e(dim);
                e[off + i] = GaussianRational(1);
                rows.push_back(std::move(e));
            }
        }
        Matrix mt = Matrix::from_cols(rows, dim);  // dim x nrows
        return mt.conj_transpose();               // selection rows are real units
    }

    const Matrix& z(int r, int p, int m) {
        auto key = std::make_tuple(r, p, m);
        auto it = memo.find(key);
        if (it != memo.end()) return it->second;
        Matrix zb;
        if (m < 0 || m > 2 * c.n() || c.deg_dim(m) == 0) {
            zb = Matrix(std::max(0, c.deg_dim(m)), 0);
        } else {
            Matrix f = filtration_incl(p, m);
            Matrix low = proj_low(p + r, m + 1);
            Matrix pipeline = low.rows > 0 && f.cols > 0 ? low * (c.total_d(m) * f) : Matrix(0, f.cols);
            std::vector<Vec> ker = mat_kernel(pipeline);
            if (pipeline.rows == 0) {
                zb = f;
            } else {
                zb = f * Matrix::from_cols(ker, f.cols);
            }
        }
        return memo.emplace(key, std::move(zb)).first->second;
    }
};

}  // namespace

FroelicherResult froelicher_pages(const CEComplex& c) {
    int n = c.n();
    int last = 2 * n + 1;
    ZCache zc{c, {}};
    FroelicherResult out;
    for (int r = 1; r <= last; r++) {
        PageTable page(n + 1, std::vector<int>(n + 1, 0));
        for (int p = 0; p <= n; p++)
            for (int q = 0; q <= n; q++) {
                int m = p + q;
                if (c.deg_dim(m) == 0) continue;
                const Matrix& zr = zc.z(r, p, m);
                const Matrix& a = zc.z(r - 1, p + 1, m);
                const Matrix& bsrc = zc.z(r - 1, p - r + 1, m - 1);
                Matrix b = m - 1 >= 0 && bsrc.cols > 0 ? c.total_d(m - 1) * bsrc : Matrix(c.deg_dim(m), 0);
                page[p][q] = zr.cols - subspace_sum_dim(a.col_list(), b.col_list(), c.deg_dim(m));
            }
        out.pages.push_back(std::move(page));
    }
    // E_1 must equal the Dolbeault table.
    for (int p = 0; p <= n; p++)
        for (int q = 0; q <= n; q++)
            if (out.pages[0][p][q] != hodge_number(c, p, q))
                throw math_error("internal: E_1 page differs from Dolbeault dimensions");
    // Pages weakly decrease and the final page recovers the Betti numbers.
    for (int r = 1; r < last; r++)
        for (int p = 0; p <= n; p++)
            for (int q = 0; q <= n; q++)
                if (out.pages[r][p][q] > out.pages[r - 1][p][q])
                    throw math_error("internal: spectral sequence page dimensions increased");
    for (int k = 0; k <= 2 * n; k++) {
        int sum = 0;
        for (int p = 0; p <= n; p++)
            for (int q = 0; q <= n; q++)
                if (p + q == k) sum += out.pages[last - 1][p][q];
        if (sum != betti(c, k)) throw math_error("internal: E_infinity does not abut to de Rham");
    }
    out.degeneration_step = last;
    for (int r = 1; r <= last; r++)
        if (out.pages[r - 1] == out.pages[last - 1]) {
            out.degeneration_step = r;
            break;
        }
    return out;
}

namespace {

Vec pq_block_of_total(const CEComplex& c, const Vec& v, int m, int p, int q) {
    Vec out(c.pq_dim(p, q));
    if (p < 0 || q < 0 || p > c.n() || q > c.n() || p + q != m) return out;
    int off = c.total_offset(p, q);
    for (int i = 0; i < c.pq_dim(p, q); i++) out[i] = v[off + i];
    return out;
}

bool cols_in_span(const Matrix& space, const Matrix& cols) {
    for (int j = 0; j < cols.cols; j++)
        if (!in_span(space, cols.col(j))) return false;
    return true;
}

}  // namespace

MapsReport canonical_maps(const CEComplex& c) {
    int n = c.n();
    MapsReport r;

    QuotientSpace a_mid = aeppli_space(c, n - 1, n - 1);
    QuotientSpace d_top = dolbeault_space(c, n, n - 1);
    QuotientSpace a_top = aeppli_space(c, n, n - 1);
    r.dim_a_top = a_top.dim();

    const Matrix& par_mid = c.block(Op::partial, n - 1, n - 1);
    // T is well defined: partial maps the Aeppli boundaries into Im dbar.
    if (!cols_in_span(d_top.boundaries, par_mid * a_mid.boundaries))
        throw math_error("internal: T is not well defined");
    r.t = Matrix(d_top.dim(), a_mid.dim());
    for (int j = 0; j < a_mid.dim(); j++) {
        Vec img = par_mid.apply(a_mid.reps.col(j));
        for (const auto& x : c.block(Op::dbar, n, n - 1).apply(img))
            if (!x.is_zero()) throw math_error("internal: T image is not dbar-closed");
        Vec coords = d_top.coords(img);
        for (int i = 0; i < d_top.dim(); i++) r.t.at(i, j) = coords[i];
    }
    r.rank_t = mat_rank(r.t);

    if (!cols_in_span(a_top.boundaries, d_top.boundaries)) throw math_error("internal: S is not well defined");
    r.s = Matrix(a_top.dim(), d_top.dim());
    for (int j = 0; j < d_top.dim(); j++) {
        Vec coords = a_top.coords(d_top.reps.col(j));
        for (int i = 0; i < a_top.dim(); i++) r.s.at(i, j) = coords[i];
    }
    r.rank_s = mat_rank(r.s);
    r.dim_ker_s = d_top.dim() - r.rank_s;
    r.s_surjective = r.rank_s == a_top.dim();
    r.exact_t_s = (r.s * r.t).is_zero() && r.rank_t == r.dim_ker_s;

    QuotientSpace bc01 = bott_chern_space(c, 0, 1);
    QuotientSpace d01 = dolbeault_space(c, 0, 1);
    QuotientSpace bc11 = bott_chern_space(c, 1, 1);

    r.s_star = Matrix(d01.dim(), bc01.dim());
    for (int j = 0; j < bc01.dim(); j++) {
        Vec coords = d01.coords(bc01.reps.col(j));
        for (int i = 0; i < d01.dim(); i++) r.s_star.at(i, j) = coords[i];
    }
    r.rank_s_star = mat_rank(r.s_star);
    r.s_star_injective = r.rank_s_star == bc01.dim();
    if (!r.s_star_injective) throw math_error("internal: S* failed to be injective");

    const Matrix& par01 = c.block(Op::partial, 0, 1);
    if (!cols_in_span(bc11.boundaries, par01 * d01.boundaries))
        throw math_error("internal: T* is not well defined");
    r.t_star = Matrix(bc11.dim(), d01.dim());
    for (int j = 0; j < d01.dim(); j++) {
        Vec coords = bc11.coords(par01.apply(d01.reps.col(j)));
        for (int i = 0; i < bc11.dim(); i++) r.t_star.at(i, j) = coords[i];
    }
    r.rank_t_star = mat_rank(r.t_star);
    r.exact_s_star_t_star = (r.t_star * r.s_star).is_zero() && r.rank_s_star == d01.dim() - r.rank_t_star;

    // F on H^1_DR.
    QuotientSpace dr1 = de_rham_space(c, 1);
    r.f = Matrix(2 * d01.dim(), dr1.dim());
    for (int j = 0; j < dr1.dim(); j++) {
        Vec alpha = dr1.reps.col(j);
        Vec a01 = pq_block_of_total(c, alpha, 1, 0, 1);
        Vec a10 = pq_block_of_total(c, alpha, 1, 1, 0);
        Vec c1 = d01.coords(a01);
        Vec c2 = d01.coords(c.conj_pq(a10, 1, 0));
        for (int i = 0; i < d01.dim(); i++) {
            r.f.at(i, j) = c1[i];
            r.f.at(d01.dim() + i, j) = c2[i].conj();
        }
    }
    r.rank_f = mat_rank(r.f);
    r.f_injective = r.rank_f == dr1.dim();
    if (!r.f_injective) throw math_error("internal: F failed to be injective");

    // P over the real class bases of H^{2n-2}_DR and H^{n-1,n-1}_A.
    QuotientSpace dr = de_rham_space(c, 2 * n - 2);
    Matrix p_cx(a_mid.dim(), dr.dim());
    for (int j = 0; j < dr.dim(); j++) {
        Vec mid = pq_block_of_total(c, dr.reps.col(j), 2 * n - 2, n - 1, n - 1);
        Vec coords = a_mid.coords(mid);
        for (int i = 0; i < a_mid.dim(); i++) p_cx.at(i, j) = coords[i];
    }
    auto conj_dr = [&](const Vec& cls) { return dr.coords(c.conj_total(dr.rep_of(cls), 2 * n - 2)); };
    auto conj_a = [&](const Vec& cls) { return a_mid.coords(c.conj_pq(a_mid.rep_of(cls), n - 1, n - 1)); };
    Matrix r_dr = real_class_basis(dr, conj_dr);
    Matrix r_a = real_class_basis(a_mid, conj_a);
    r.p = mat_inverse(r_a) * (p_cx * r_dr);
    for (const auto& e : r.p.a)
        if (e.im != 0) throw math_error("internal: P matrix is not real over the real class bases");
    r.rank_p = mat_rank(r.p);
    r.p_surjective = r.rank_p == a_mid.dim();
    return r;
}

SggVerdict sgg_verdict(const CEComplex& c) {
    SggVerdict v;
    MapsReport maps = canonical_maps(c);
    v.t_rank = maps.rank_t;
    int h01 = hodge_number(c, 0, 1);
    v.crit_bc = bc_number(c, 0, 1) == h01;
    v.crit_betti = betti(c, 1) == 2 * h01;
    v.sgg = v.t_rank == 0;
    if (c.report().unimodular) {
        if (v.sgg != v.crit_bc || v.sgg != v.crit_betti)
            throw math_error("internal: the three sGG criteria disagree on a unimodular input");
        if (v.sgg && !maps.p_surjective) throw math_error("internal: P not surjective on an sGG input");
        if (!maps.s_surjective) throw math_error("internal: S not surjective on a unimodular input");
    }
    if (!maps.exact_t_s) throw math_error("internal: Im T = ker S fails");
    if (!maps.exact_s_star_t_star) throw math_error("internal: Im S* = ker T* fails");
    return v;
}

CohomologyProfile compute_profile(const CEComplex& c, const std::string& name) {
    CohomologyProfile pr;
    pr.name = name;
    pr.n = c.n();
    pr.unimodular = c.report().unimodular;
    pr.nilpotent = c.report().nilpotent;
    int n = c.n();
    for (int k = 0; k <= 2 * n; k++) pr.betti.push_back(betti(c, k));
    pr.hodge.assign(n + 1, std::vector<int>(n + 1));
    pr.bc.assign(n + 1, std::vector<int>(n + 1));
    pr.aeppli.assign(n + 1, std::vector<int>(n + 1));
    for (int p = 0; p <= n; p++)
        for (int q = 0; q <= n; q++) {
            pr.hodge[p][q] = hodge_number(c, p, q);
            pr.bc[p][q] = bc_number(c, p, q);
            pr.aeppli[p][q] = aeppli_number(c, p, q);
        }
    FroelicherResult fr = froelicher_pages(c);
    pr.e_pages = fr.pages;
    pr.degeneration_step = fr.degeneration_step;
    MapsReport maps = canonical_maps(c);
    pr.rank_t = maps.rank_t;
    pr.rank_s = maps.rank_s;
    pr.rank_s_star = maps.rank_s_star;
    pr.rank_t_star = maps.rank_t_star;
    pr.rank_f = maps.rank_f;
    pr.rank_p = maps.rank_p;
    pr.sgg = sgg_verdict(c);
    return pr;
}

}  // namespace sgg
