#pragma once

#include "sggcalc/cohomology.hpp"

namespace sgg {

struct MetricFlags {
    bool positive = false;
    bool gauduchon = false;
    bool strongly_gauduchon = false;
    bool superstrong = false;
    bool balanced = false;
};

// Flags for an explicitly given invariant Hermitian metric (a real (1,1)
// form). All conditions are decided exactly on omega^{n-1}.
MetricFlags check_metric(const CEComplex& c, const Form& omega);

// True iff the operator partial dbar : (p,q) -> (p+1,q+1) is identically 0.
bool ddbar_vanishing(const CEComplex& c, int p, int q);

enum class MetricKind { gauduchon, sG, supersG, balanced };

struct FeasibilityAnswer {
    enum class Status { witness, infeasible, undecided };
    Status status = Status::undecided;
    Form witness;        // positive element of the condition subspace
    Matrix certificate;  // nonzero PSD matrix trace-orthogonal to the subspace
};

// Decides whether the linear condition subspace of real (n-1,n-1)-forms for
// the given kind contains a strictly positive element: a documented finite
// rational search for witnesses, a separation search for PSD certificates,
// and an honest "undecided" otherwise. All verifications are exact.
FeasibilityAnswer positive_feasibility(const CEComplex& c, MetricKind kind);

// Basis (as Hermitian matrices) of the real solution subspace V used by the
// feasibility search. Exposed for exact subspace comparisons.
std::vector<Matrix> feasibility_subspace(const CEComplex& c, MetricKind kind);

const char* metric_kind_name(MetricKind k);

}  // namespace sgg
