#pragma once

#include <map>
#include <string>
#include <vector>

#include "sggcalc/coeff_expr.hpp"
#include "sggcalc/exterior.hpp"

namespace sgg {

struct validation_error : std::runtime_error {
    explicit validation_error(const std::string& m) : std::runtime_error(m) {}
};

// Complex structure equations: the differentials d eta^k of a (1,0)-coframe,
// each a sum of (2,0)- and (1,1)-monomials (no (0,2) part, which encodes
// integrability). d eta^{kbar} := conj(d eta^k) throughout.
struct StructureEquations {
    int n = 0;
    std::string name;
    std::vector<Form> dgen;  // dgen[k-1] = d eta^k

    bool operator==(const StructureEquations&) const = default;
};

struct ValidationReport {
    bool ok = false;
    bool unimodular = false;
    bool nilpotent = false;
    std::vector<std::string> problems;
};

enum class Op { partial, dbar, d };

// d eta^k (anti=false) or d eta^{kbar} (anti=true), k in 1..n.
Form d_generator(const StructureEquations& s, bool anti, int k);

// Antiderivation extensions, exact.
Form apply_d(const StructureEquations& s, const Form& a);
Form apply_op(const StructureEquations& s, Op op, const Form& a);

// d(d eta^k) = 0 for every generator, plus the unimodularity flag
// (d vanishes on Lambda^{2n-1}) and the Salamon-filtration nilpotency flag.
ValidationReport validate(const StructureEquations& s);

// Matrix of the operator block (p,q) -> (p+1,q) / (p,q+1) / their sum target
// in the canonical monomial bases. Out-of-range bidegrees give matrices with
// zero rows or columns.
Matrix operator_matrix(const StructureEquations& s, Op op, int p, int q);

// JSON structure document: {"n":3,"name":"...","d":{"3":{"12":"1","1~1":"1"}}}
// where key "jk" (j<k) is eta^j^eta^k and "j~k" is eta^j^eta^{kbar}.
StructureEquations parse_structure_text(const std::string& json_text);
std::string structure_to_json_text(const StructureEquations& s);

// A t-parametrized frame + structure-equation family. The frame expresses
// the (1,0)-coframe nu^k_t in the ambient basis {eta^j, eta^{jbar}} and is
// the identity at t = 0.
struct FamilySpec {
    int n = 0;
    std::string name;
    // frame[k-1]: maps key "j" / "~j" to the coefficient of eta^j / eta^{jbar}.
    std::vector<std::map<std::string, CoeffExpr>> frame;
    // dgen[k-1]: maps monomial key ("jk" or "j~k") to its coefficient.
    std::vector<std::map<std::string, CoeffExpr>> dgen;
    bool jump_locus_circle = false;  // declared locus |t|^2 + |1-t|^2 = 1
    std::string domain_note;
};

FamilySpec parse_family_text(const std::string& json_text);

// Structure equations at parameter t (validated). Poles raise math_error
// naming the offending coefficient.
StructureEquations family_instantiate(const FamilySpec& f, const GaussianRational& t);

// Exact test |t|^2 + |1-t|^2 = 1 for families declaring that locus.
bool on_jump_locus(const FamilySpec& f, const GaussianRational& t);

// 2n x 2n change of frame at t: row k is nu^{k+1}, row n+k is nu^{(k+1)bar},
// each in ambient coordinates (eta^1..eta^n, eta^{1bar}..eta^{nbar}).
Matrix frame_matrix(const FamilySpec& f, const GaussianRational& t);

struct FramePiece {
    int p = 0, q = 0;   // bidegree w.r.t. the t-frame
    Form in_frame;      // coordinates in the nu_t-coframe
    Form ambient;       // the same piece written in ambient coordinates
};

// Splits an ambient form by (p,q)_t-bidegree. Pieces sum to the input
// exactly; a singular frame is an error.
std::vector<FramePiece> frame_change_bigrading(const FamilySpec& f, const GaussianRational& t, const Form& omega);

// Linear substitution of generators: each eta^j / eta^{jbar} is replaced by
// the given 1-form; monomials become ordered wedges of the images.
Form substitute_generators(const Form& a, const std::vector<Form>& holo_images,
                           const std::vector<Form>& anti_images);

}  // namespace sgg
