#include "sggcalc/exterior.hpp"

#include <algorithm>
#include <optional>

namespace sgg {

Form Form::scalar(int dim, const GaussianRational& c) {
    Form f(dim);
    f.add_term(MultiIndex{}, c);
    return f;
}

Form Form::monomial(int dim, const MultiIndex& mi, const GaussianRational& c) {
    Form f(dim);
    f.add_term(mi, c);
    return f;
}

void Form::add_term(const MultiIndex& mi, const GaussianRational& c) {
    if (c.is_zero()) return;
    auto it = terms.find(mi);
    if (it == terms.end()) {
        terms.emplace(mi, c);
    } else {
        it->second += c;
        if (it->second.is_zero()) terms.erase(it);
    }
}

bool Form::pure_bidegree(int p, int q) const {
    for (const auto& [mi, c] : terms)
        if (mi.p() != p || mi.q() != q) return false;
    return true;
}

Form operator+(const Form& a, const Form& b) {
    if (a.n != b.n) throw math_error("form sum dimension mismatch");
    Form f = a;
    for (const auto& [mi, c] : b.terms) f.add_term(mi, c);
    return f;
}

Form operator-(const Form& a, const Form& b) { return a + (-b); }

Form Form::operator-() const {
    Form f(n);
    for (const auto& [mi, c] : terms) f.terms.emplace(mi, -c);
    return f;
}

Form Form::scaled(const GaussianRational& c) const {
    Form f(n);
    if (c.is_zero()) return f;
    for (const auto& [mi, v] : terms) f.terms.emplace(mi, v * c);
    return f;
}

namespace {

void combinations(int n, int k, int start, std::vector<uint8_t>& cur, std::vector<std::vector<uint8_t>>& out) {
    if (static_cast<int>(cur.size()) == k) {
        out.push_back(cur);
        return;
    }
    for (int v = start; v <= n; v++) {
        cur.push_back(static_cast<uint8_t>(v));
        combinations(n, k, v + 1, cur, out);
        cur.pop_back();
    }
}

std::vector<std::vector<uint8_t>> index_sets(int n, int k) {
    std::vector<std::vector<uint8_t>> out;
    std::vector<uint8_t> cur;
    combinations(n, k, 1, cur, out);
    return out;
}

// Merges two strictly increasing lists; returns nullopt on a repeated index,
// otherwise the merged list and the anticommutation sign.
std::optional<std::pair<std::vector<uint8_t>, int>> merge_sign(const std::vector<uint8_t>& a,
                                                               const std::vector<uint8_t>& b) {
    std::vector<uint8_t> m;
    m.reserve(a.size() + b.size());
    size_t i = 0, j = 0;
    int inversions = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i] == b[j]) return std::nullopt;
        if (a[i] < b[j]) {
            m.push_back(a[i++]);
        } else {
            inversions += static_cast<int>(a.size() - i);
            m.push_back(b[j++]);
        }
    }
    while (i < a.size()) m.push_back(a[i++]);
    while (j < b.size()) m.push_back(b[j++]);
    return std::make_pair(std::move(m), inversions % 2 == 0 ? 1 : -1);
}

}  // namespace

std::vector<MultiIndex> basis(int n, int p, int q) {
    if (p < 0 || q < 0 || p > n || q > n) throw math_error("basis: bidegree out of range");
    std::vector<MultiIndex> out;
    for (const auto& holo : index_sets(n, p))
        for (const auto& anti : index_sets(n, q)) out.push_back(MultiIndex{holo, anti});
    return out;
}

Form wedge(const Form& a, const Form& b) {
    if (a.n != b.n) throw math_error("wedge dimension mismatch");
    Form f(a.n);
    for (const auto& [ma, ca] : a.terms) {
        for (const auto& [mb, cb] : b.terms) {
            auto holo = merge_sign(ma.holo, mb.holo);
            if (!holo) continue;
            auto anti = merge_sign(ma.anti, mb.anti);
            if (!anti) continue;
            // b's holomorphic block crosses a's antiholomorphic block.
            int cross = (mb.p() * ma.q()) % 2 == 0 ? 1 : -1;
            int sign = cross * holo->second * anti->second;
            f.add_term(MultiIndex{holo->first, anti->first}, ca * cb * GaussianRational(sign));
        }
    }
    return f;
}

Form wedge_power(const Form& a, int k) {
    if (k < 0) throw math_error("wedge_power: negative exponent");
    Form f = Form::scalar(a.n, GaussianRational(1));
    for (int i = 0; i < k; i++) f = wedge(f, a);
    return f;
}

Form conjugate_form(const Form& a) {
    Form f(a.n);
    for (const auto& [mi, c] : a.terms) {
        int sign = (mi.p() * mi.q()) % 2 == 0 ? 1 : -1;
        f.add_term(MultiIndex{mi.anti, mi.holo}, c.conj() * GaussianRational(sign));
    }
    return f;
}

bool is_real_form(const Form& a) { return conjugate_form(a) == a; }

Form component(const Form& a, int p, int q) {
    Form f(a.n);
    for (const auto& [mi, c] : a.terms)
        if (mi.p() == p && mi.q() == q) f.terms.emplace(mi, c);
    return f;
}

Vec form_to_vec(const Form& a, int p, int q) {
    if (!a.pure_bidegree(p, q)) throw math_error("form_to_vec: form is not pure of the requested bidegree");
    std::vector<MultiIndex> b = basis(a.n, p, q);
    Vec v(b.size());
    for (size_t i = 0; i < b.size(); i++) {
        auto it = a.terms.find(b[i]);
        if (it != a.terms.end()) v[i] = it->second;
    }
    return v;
}

Form vec_to_form(int n, const Vec& v, int p, int q) {
    std::vector<MultiIndex> b = basis(n, p, q);
    if (v.size() != b.size()) throw math_error("vec_to_form: coordinate length mismatch");
    Form f(n);
    for (size_t i = 0; i < b.size(); i++) f.add_term(b[i], v[i]);
    return f;
}

namespace {
GaussianRational volume_unit(int n) {
    // i^n * (-1)^{n(n-1)/2}
    GaussianRational c(1);
    for (int k = 0; k < n; k++) c *= GaussianRational::i();
    if ((n * (n - 1) / 2) % 2 != 0) c = -c;
    return c;
}
}  // namespace

Form volume_form(int n) {
    std::vector<uint8_t> all;
    for (int k = 1; k <= n; k++) all.push_back(static_cast<uint8_t>(k));
    return Form::monomial(n, MultiIndex{all, all}, volume_unit(n));
}

GaussianRational top_coefficient(const Form& a) {
    std::vector<uint8_t> all;
    for (int k = 1; k <= a.n; k++) all.push_back(static_cast<uint8_t>(k));
    auto it = a.terms.find(MultiIndex{all, all});
    if (it == a.terms.end()) return GaussianRational(0);
    return it->second / volume_unit(a.n);
}

Matrix hermitian_matrix_of_11(const Form& a) {
    if (!a.pure_bidegree(1, 1)) throw math_error("hermitian_matrix_of_11: form is not pure (1,1)");
    Matrix h(a.n, a.n);
    for (const auto& [mi, c] : a.terms)
        h.at(mi.holo[0] - 1, mi.anti[0] - 1) = c / GaussianRational::i();
    return h;
}

Form form_of_hermitian_11(int n, const Matrix& h) {
    if (h.rows != n || h.cols != n) throw math_error("form_of_hermitian_11: shape mismatch");
    Form f(n);
    for (int j = 0; j < n; j++)
        for (int k = 0; k < n; k++)
            f.add_term(MultiIndex{{static_cast<uint8_t>(j + 1)}, {static_cast<uint8_t>(k + 1)}},
                       GaussianRational::i() * h.at(j, k));
    return f;
}

Matrix hermitian_matrix_of_n1n1(const Form& a) {
    int n = a.n;
    if (!a.pure_bidegree(n - 1, n - 1)) throw math_error("hermitian_matrix_of_n1n1: form is not pure (n-1,n-1)");
    Matrix h(n, n);
    for (int j = 0; j < n; j++)
        for (int k = 0; k < n; k++) {
            Form probe = Form::monomial(
                n, MultiIndex{{static_cast<uint8_t>(j + 1)}, {static_cast<uint8_t>(k + 1)}}, GaussianRational::i());
            h.at(j, k) = top_coefficient(wedge(a, probe));
        }
    return h;
}

Form form_of_hermitian_n1n1(int n, const Matrix& h) {
    if (h.rows != n || h.cols != n) throw math_error("form_of_hermitian_n1n1: shape mismatch");
    Form f(n);
    for (int j = 0; j < n; j++)
        for (int k = 0; k < n; k++) {
            if (h.at(j, k).is_zero()) continue;
            std::vector<uint8_t> holo, anti;
            for (int v = 1; v <= n; v++) {
                if (v != j + 1) holo.push_back(static_cast<uint8_t>(v));
                if (v != k + 1) anti.push_back(static_cast<uint8_t>(v));
            }
            MultiIndex mi{holo, anti};
            Form probe = Form::monomial(
                n, MultiIndex{{static_cast<uint8_t>(j + 1)}, {static_cast<uint8_t>(k + 1)}}, GaussianRational::i());
            GaussianRational unit = top_coefficient(wedge(Form::monomial(n, mi, GaussianRational(1)), probe));
            f.add_term(mi, h.at(j, k) / unit);
        }
    return f;
}

std::string render_multi_index(const MultiIndex& mi) {
    if (mi.degree() == 0) return "1";
    std::string s = "η^{";
    for (size_t i = 0; i < mi.holo.size(); i++) {
        if (i) s += ",";
        s += std::to_string(static_cast<int>(mi.holo[i]));
    }
    s += "|";
    for (size_t i = 0; i < mi.anti.size(); i++) {
        if (i) s += ",";
        s += std::to_string(static_cast<int>(mi.anti[i]));
        s += "̄";
    }
    s += "}";
    return s;
}

std::string render_form(const Form& a) {
    if (a.is_zero()) return "0";
    std::string s;
    for (const auto& [mi, c] : a.terms) {
        if (!s.empty()) s += " + ";
        if (mi.degree() == 0) {
            s += render_scalar(c);
        } else {
            std::string cs = render_scalar(c);
            if (cs == "1")
                s += render_multi_index(mi);
            else if (cs == "-1")
                s += "-" + render_multi_index(mi);
            else if (cs.find('+') != std::string::npos || cs.find('-') != std::string::npos)
                s += "(" + cs + ")*" + render_multi_index(mi);
            else
                s += cs + "*" + render_multi_index(mi);
        }
    }
    return s;
}

}  // namespace sgg
