#include "sggcalc/structure.hpp"

#include <functional>

#include <json.hpp>

namespace sgg {

Form d_generator(const StructureEquations& s, bool anti, int k) {
    if (k < 1 || k > s.n) throw math_error("generator index out of range");
    const Form& dk = s.dgen[k - 1];
    return anti ? conjugate_form(dk) : dk;
}

namespace {

// One summand of the antiderivation: remove the generator at a position of
// the monomial, wedge its differential in, keep the exact sign.
Form antiderivation(const StructureEquations& s, const Form& a,
                    const std::function<Form(bool anti, int k)>& gen_image) {
    Form out(a.n);
    for (const auto& [mi, c] : a.terms) {
        int pos = 0;
        for (size_t r = 0; r < mi.holo.size(); r++, pos++) {
            MultiIndex rest = mi;
            rest.holo.erase(rest.holo.begin() + static_cast<long>(r));
            Form img = gen_image(false, mi.holo[r]);
            if (img.is_zero()) continue;
            GaussianRational coeff = c * GaussianRational(pos % 2 == 0 ? 1 : -1);
            // d eta at the front, remaining monomial after it: sign from
            // moving d eta^k past the first `pos` generators.
            out = out + wedge(img.scaled(coeff), Form::monomial(a.n, rest, GaussianRational(1)));
        }
        for (size_t r = 0; r < mi.anti.size(); r++, pos++) {
            MultiIndex rest = mi;
            rest.anti.erase(rest.anti.begin() + static_cast<long>(r));
            Form img = gen_image(true, mi.anti[r]);
            if (img.is_zero()) continue;
            GaussianRational coeff = c * GaussianRational(pos % 2 == 0 ? 1 : -1);
            out = out + wedge(img.scaled(coeff), Form::monomial(a.n, rest, GaussianRational(1)));
        }
    }
    return out;
}

}  // namespace

Form apply_d(const StructureEquations& s, const Form& a) {
    return antiderivation(s, a, [&](bool anti, int k) { return d_generator(s, anti, k); });
}

Form apply_op(const StructureEquations& s, Op op, const Form& a) {
    if (op == Op::d) return apply_d(s, a);
    return antiderivation(s, a, [&](bool anti, int k) {
        Form dg = d_generator(s, anti, k);
        // On eta^k: partial = (2,0)-part, dbar = (1,1)-part; on eta^{kbar}:
        // partial = (1,1)-part, dbar = (0,2)-part.
        int p = op == Op::partial ? (anti ? 1 : 2) : (anti ? 0 : 1);
        return component(dg, p, 2 - p);
    });
}

namespace {
int pq_dim(int n, int p, int q) {
    if (p < 0 || q < 0 || p > n || q > n) return 0;
    return static_cast<int>(basis(n, p, q).size());
}
}  // namespace

Matrix operator_matrix(const StructureEquations& s, Op op, int p, int q) {
    int tp = op == Op::dbar ? p : p + 1;
    int tq = op == Op::dbar ? q + 1 : q;
    if (op == Op::d) throw math_error("operator_matrix: use partial/dbar blocks for d");
    int src = pq_dim(s.n, p, q), dst = pq_dim(s.n, tp, tq);
    Matrix m(dst, src);
    if (src == 0 || dst == 0) return m;
    std::vector<MultiIndex> src_basis = basis(s.n, p, q);
    for (int j = 0; j < src; j++) {
        Form img = apply_op(s, op, Form::monomial(s.n, src_basis[j], GaussianRational(1)));
        Vec v = form_to_vec(img, tp, tq);
        for (int i = 0; i < dst; i++) m.at(i, j) = v[i];
    }
    return m;
}

ValidationReport validate(const StructureEquations& s) {
    ValidationReport rep;
    if (s.n < 1) {
        rep.problems.push_back("complex dimension must be at least 1");
        return rep;
    }
    if (static_cast<int>(s.dgen.size()) != s.n) {
        rep.problems.push_back("expected one differential per generator");
        return rep;
    }
    for (int k = 1; k <= s.n; k++) {
        const Form& dk = s.dgen[k - 1];
        if (dk.n != s.n) {
            rep.problems.push_back("d eta^" + std::to_string(k) + " has wrong ambient dimension");
            continue;
        }
        for (const auto& [mi, c] : dk.terms) {
            (void)c;
            if (!((mi.p() == 2 && mi.q() == 0) || (mi.p() == 1 && mi.q() == 1)))
                rep.problems.push_back("non-integrable input: d eta^" + std::to_string(k) +
                                       " has a component outside (2,0)+(1,1)");
        }
        if (!apply_d(s, dk).is_zero())
            rep.problems.push_back("not a Lie-algebra differential: d(d eta^" + std::to_string(k) + ") != 0");
        if (!apply_d(s, conjugate_form(dk)).is_zero())
            rep.problems.push_back("not a Lie-algebra differential: d(d eta^" + std::to_string(k) + "bar) != 0");
    }
    if (!rep.problems.empty()) return rep;
    rep.ok = true;

    // Unimodularity: d vanishes identically on (2n-1)-forms.
    rep.unimodular = true;
    for (int p = std::max(0, s.n - 1); p <= s.n; p++) {
        int q = 2 * s.n - 1 - p;
        if (q < 0 || q > s.n) continue;
        if (!operator_matrix(s, Op::partial, p, q).is_zero() || !operator_matrix(s, Op::dbar, p, q).is_zero())
            rep.unimodular = false;
    }

    // Salamon filtration: V_0 = ker d on degree 1, V_{i+1} = {a : da in
    // Lambda^2(V_i)}; nilpotent iff the filtration exhausts degree 1.
    int dim1 = 2 * s.n;
    std::vector<MultiIndex> b1;
    for (const auto& mi : basis(s.n, 1, 0)) b1.push_back(mi);
    for (const auto& mi : basis(s.n, 0, 1)) b1.push_back(mi);
    auto d_of_unit = [&](int j) { return apply_d(s, Form::monomial(s.n, b1[j], GaussianRational(1))); };
    // Degree-2 coordinates: (2,0) then (1,1) then (0,2).
    auto deg2_vec = [&](const Form& f) {
        Vec v;
        for (auto [p, q] : {std::pair{2, 0}, std::pair{1, 1}, std::pair{0, 2}}) {
            Vec part = form_to_vec(component(f, p, q), p, q);
            v.insert(v.end(), part.begin(), part.end());
        }
        return v;
    };
    int dim2 = pq_dim(s.n, 2, 0) + pq_dim(s.n, 1, 1) + pq_dim(s.n, 0, 2);
    Matrix v_cur(dim1, 0);
    while (true) {
        // Lambda^2(V_cur) spanned by pairwise wedges of the current basis.
        std::vector<Vec> wedges;
        std::vector<Form> v_forms;
        for (int j = 0; j < v_cur.cols; j++) {
            Form f(s.n);
            for (int i = 0; i < dim1; i++) f.add_term(b1[i], v_cur.at(i, j));
            v_forms.push_back(f);
        }
        for (size_t a = 0; a < v_forms.size(); a++)
            for (size_t b = a + 1; b < v_forms.size(); b++) wedges.push_back(deg2_vec(wedge(v_forms[a], v_forms[b])));
        Matrix lambda2 = col_space_basis(Matrix::from_cols(wedges, dim2));
        // Next stage: kernel of (d mod Lambda^2(V_cur)) on degree 1.
        std::vector<Vec> next;
        Matrix d1(dim2, dim1);
        for (int j = 0; j < dim1; j++) {
            Vec dj = deg2_vec(d_of_unit(j));
            for (int i = 0; i < dim2; i++) d1.at(i, j) = dj[i];
        }
        // Solve: x in V_next iff d1 x lies in span(lambda2): kernel of the
        // composition with a projection away from the span.
        Matrix stacked = hstack(d1, lambda2);
        std::vector<Vec> ker = mat_kernel(stacked);
        std::vector<Vec> vnext;
        for (const Vec& kv : ker) vnext.push_back(Vec(kv.begin(), kv.begin() + dim1));
        Matrix v_new = col_space_basis(Matrix::from_cols(vnext, dim1));
        if (v_new.cols == v_cur.cols) break;
        v_cur = v_new;
        if (v_cur.cols == dim1) break;
    }
    rep.nilpotent = v_cur.cols == dim1;
    return rep;
}

namespace {

// Monomial key: "jk" with j<k for eta^j^eta^k, "j~k" for eta^j^eta^{kbar}.
MultiIndex parse_monomial_key(const std::string& key, int n) {
    auto digit = [&](char c) -> int {
        if (c < '1' || c > '0' + n) throw validation_error("malformed index '" + key + "': index out of 1.." +
                                                           std::to_string(n));
        return c - '0';
    };
    if (key.size() == 2 && key[1] != '~' && key[0] != '~') {
        int j = digit(key[0]), k = digit(key[1]);
        if (j >= k) throw validation_error("malformed index pair '" + key + "': need j<k");
        return MultiIndex{{static_cast<uint8_t>(j), static_cast<uint8_t>(k)}, {}};
    }
    if (key.size() == 3 && key[1] == '~' && key[0] != '~') {
        int j = digit(key[0]), k = digit(key[2]);
        return MultiIndex{{static_cast<uint8_t>(j)}, {static_cast<uint8_t>(k)}};
    }
    if (!key.empty() && key[0] == '~')
        throw validation_error("non-integrable input: key '" + key + "' denotes a (0,2) monomial");
    throw validation_error("malformed monomial key '" + key + "'");
}

}  // namespace

StructureEquations parse_structure_text(const std::string& json_text) {
    nlohmann::json j = nlohmann::json::parse(json_text);
    StructureEquations s;
    s.n = j.at("n").get<int>();
    s.name = j.value("name", "");
    if (s.n < 1 || s.n > 6) throw validation_error("unsupported complex dimension");
    s.dgen.assign(s.n, Form(s.n));
    if (j.contains("d")) {
        for (auto it = j["d"].begin(); it != j["d"].end(); ++it) {
            int k = std::stoi(it.key());
            if (k < 1 || k > s.n) throw validation_error("generator index out of range in 'd'");
            for (auto t = it.value().begin(); t != it.value().end(); ++t) {
                MultiIndex mi = parse_monomial_key(t.key(), s.n);
                GaussianRational c = CoeffExpr::parse(t.value().get<std::string>()).eval(std::nullopt);
                s.dgen[k - 1].add_term(mi, c);
            }
        }
    }
    ValidationReport rep = validate(s);
    if (!rep.ok) {
        std::string msg = "invalid structure equations";
        for (const auto& p : rep.problems) msg += "; " + p;
        throw validation_error(msg);
    }
    return s;
}

std::string structure_to_json_text(const StructureEquations& s) {
    nlohmann::json j;
    j["n"] = s.n;
    j["name"] = s.name;
    nlohmann::json d = nlohmann::json::object();
    for (int k = 1; k <= s.n; k++) {
        if (s.dgen[k - 1].is_zero()) continue;
        nlohmann::json entry = nlohmann::json::object();
        for (const auto& [mi, c] : s.dgen[k - 1].terms) {
            std::string key;
            if (mi.p() == 2)
                key = std::to_string(static_cast<int>(mi.holo[0])) + std::to_string(static_cast<int>(mi.holo[1]));
            else
                key = std::to_string(static_cast<int>(mi.holo[0])) + "~" + std::to_string(static_cast<int>(mi.anti[0]));
            entry[key] = render_scalar(c);
        }
        d[std::to_string(k)] = entry;
    }
    j["d"] = d;
    return j.dump(2);
}

FamilySpec parse_family_text(const std::string& json_text) {
    nlohmann::json j = nlohmann::json::parse(json_text);
    FamilySpec f;
    f.n = j.at("n").get<int>();
    f.name = j.value("name", "");
    f.jump_locus_circle = j.value("jump_locus_circle", false);
    f.domain_note = j.value("domain", "");
    f.frame.resize(f.n);
    f.dgen.resize(f.n);
    for (auto it = j.at("frame").begin(); it != j.at("frame").end(); ++it) {
        int k = std::stoi(it.key());
        if (k < 1 || k > f.n) throw validation_error("frame generator index out of range");
        for (auto t = it.value().begin(); t != it.value().end(); ++t)
            f.frame[k - 1].emplace(t.key(), CoeffExpr::parse(t.value().get<std::string>()));
    }
    if (j.contains("d")) {
        for (auto it = j["d"].begin(); it != j["d"].end(); ++it) {
            int k = std::stoi(it.key());
            if (k < 1 || k > f.n) throw validation_error("generator index out of range in 'd'");
            for (auto t = it.value().begin(); t != it.value().end(); ++t) {
                parse_monomial_key(t.key(), f.n);  // shape check up front
                f.dgen[k - 1].emplace(t.key(), CoeffExpr::parse(t.value().get<std::string>()));
            }
        }
    }
    // The frame must be the identity at t = 0.
    Matrix a0 = frame_matrix(f, GaussianRational(0));
    if (!(a0 == Matrix::identity(2 * f.n))) throw validation_error("family frame is not the identity at t=0");
    return f;
}

StructureEquations family_instantiate(const FamilySpec& f, const GaussianRational& t) {
    StructureEquations s;
    s.n = f.n;
    s.name = f.name + " @ t=" + render_scalar(t);
    s.dgen.assign(f.n, Form(f.n));
    for (int k = 1; k <= f.n; k++) {
        for (const auto& [key, expr] : f.dgen[k - 1]) {
            GaussianRational c;
            try {
                c = expr.eval(t);
            } catch (const math_error& e) {
                throw math_error("family '" + f.name + "', coefficient of d nu^" + std::to_string(k) + " at '" +
                                 key + "': " + e.what());
            }
            s.dgen[k - 1].add_term(parse_monomial_key(key, f.n), c);
        }
    }
    ValidationReport rep = validate(s);
    if (!rep.ok) {
        std::string msg = "family instantiation failed validation at t=" + render_scalar(t);
        for (const auto& p : rep.problems) msg += "; " + p;
        throw validation_error(msg);
    }
    return s;
}

bool on_jump_locus(const FamilySpec& f, const GaussianRational& t) {
    if (!f.jump_locus_circle) return false;
    GaussianRational one(1);
    Rational lhs = t.norm() + (one - t).norm();
    return lhs == 1;
}

Matrix frame_matrix(const FamilySpec& f, const GaussianRational& t) {
    int n = f.n;
    Matrix a(2 * n, 2 * n);
    for (int k = 1; k <= n; k++) {
        bool any = false;
        for (const auto& [key, expr] : f.frame[k - 1]) {
            any = true;
            GaussianRational c;
            try {
                c = expr.eval(t);
            } catch (const math_error& e) {
                throw math_error("family '" + f.name + "', frame coefficient of nu^" + std::to_string(k) + " at '" +
                                 key + "': " + e.what());
            }
            bool anti = !key.empty() && key[0] == '~';
            std::string digits = anti ? key.substr(1) : key;
            if (digits.size() != 1 || digits[0] < '1' || digits[0] > '0' + n)
                throw validation_error("malformed frame key '" + key + "'");
            int jdx = digits[0] - '0';
            a.at(k - 1, anti ? n + jdx - 1 : jdx - 1) = c;
        }
        if (!any) a.at(k - 1, k - 1) = GaussianRational(1);
    }
    // Conjugate rows: nu^{kbar} = conj(nu^k).
    for (int k = 0; k < n; k++)
        for (int j = 0; j < n; j++) {
            a.at(n + k, j) = a.at(k, n + j).conj();
            a.at(n + k, n + j) = a.at(k, j).conj();
        }
    return a;
}

Form substitute_generators(const Form& a, const std::vector<Form>& holo_images,
                           const std::vector<Form>& anti_images) {
    int n = a.n;
    Form out(n);
    for (const auto& [mi, c] : a.terms) {
        Form prod = Form::scalar(n, c);
        for (uint8_t j : mi.holo) prod = wedge(prod, holo_images[j - 1]);
        for (uint8_t j : mi.anti) prod = wedge(prod, anti_images[j - 1]);
        out = out + prod;
    }
    return out;
}

std::vector<FramePiece> frame_change_bigrading(const FamilySpec& f, const GaussianRational& t, const Form& omega) {
    int n = f.n;
    Matrix a = frame_matrix(f, t);
    Matrix b;
    try {
        b = mat_inverse(a);
    } catch (const math_error&) {
        throw math_error("singular frame at t=" + render_scalar(t));
    }
    auto row_form = [&](const Matrix& m, int row) {
        Form g(n);
        for (int j = 0; j < n; j++) {
            g.add_term(MultiIndex{{static_cast<uint8_t>(j + 1)}, {}}, m.at(row, j));
            g.add_term(MultiIndex{{}, {static_cast<uint8_t>(j + 1)}}, m.at(row, n + j));
        }
        return g;
    };
    // eta-generators written in the nu-coframe, and back.
    std::vector<Form> eta_in_nu_holo, eta_in_nu_anti, nu_in_eta_holo, nu_in_eta_anti;
    for (int j = 0; j < n; j++) {
        eta_in_nu_holo.push_back(row_form(b, j));
        eta_in_nu_anti.push_back(row_form(b, n + j));
        nu_in_eta_holo.push_back(row_form(a, j));
        nu_in_eta_anti.push_back(row_form(a, n + j));
    }
    Form in_nu = substitute_generators(omega, eta_in_nu_holo, eta_in_nu_anti);
    std::vector<FramePiece> pieces;
    Form resum(n);
    for (int p = 0; p <= n; p++)
        for (int q = 0; q <= n; q++) {
            Form piece = component(in_nu, p, q);
            if (piece.is_zero()) continue;
            FramePiece fp;
            fp.p = p;
            fp.q = q;
            fp.in_frame = piece;
            fp.ambient = substitute_generators(piece, nu_in_eta_holo, nu_in_eta_anti);
            resum = resum + fp.ambient;
            pieces.push_back(std::move(fp));
        }
    if (!(resum == omega)) throw math_error("frame change failed the partition identity");
    return pieces;
}

}  // namespace sgg
