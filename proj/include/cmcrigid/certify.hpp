#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cmcrigid/delaunay.hpp"
#include "cmcrigid/weierstrass.hpp"

namespace cmcr {

enum class Verdict { Rigid, NonRigid, Inconclusive };

inline const char* to_string(Verdict v)
{
    switch (v) {
    case Verdict::Rigid: return "Rigid";
    case Verdict::NonRigid: return "NonRigid";
    case Verdict::Inconclusive: return "Inconclusive";
    }
    return "Inconclusive";
}

struct FluxWitness {
    LoopSpec loop;
    FluxVector flux;
};

// Machine-checkable rigidity verdict with its numerical witness: either a
// loop with nonzero flux or a theta-sweep gap table with positive minimum.
// Rigid is claimed only on a nonzero witness; NonRigid only where the
// converse theorems apply (simply-connected or zero-flux non-flat surface,
// for which the associate family exists); everything else is Inconclusive.
struct RigidityReport {
    std::string subject;
    Verdict verdict = Verdict::Inconclusive;
    std::optional<FluxWitness> flux_witness;
    std::optional<GapSweep> gap_sweep;
    double tolerance = 0.0;
    std::string diagnostic;
    std::string timestamp;  // informational only, never part of the certified data
};

// Calabi flux criterion: nonzero flux on some loop of a homology generating
// basis obstructs the associate family, hence the surface is rigid.
inline RigidityReport certify_minimal(const WeierstrassSurface& s,
                                      const std::vector<LoopSpec>& basis,
                                      double tol = 1e-8)
{
    RigidityReport rep;
    rep.subject = s.name;
    rep.tolerance = tol;
    try {
        for (const LoopSpec& loop : basis) {
            const FluxVector f = flux(s, loop);
            if (f.v.cwiseAbs().maxCoeff() > tol) {
                rep.verdict = Verdict::Rigid;
                rep.flux_witness = FluxWitness{loop, f};
                rep.diagnostic = "nonzero flux obstructs the associate family";
                return rep;
            }
        }
    } catch (const QuadratureError& e) {
        rep.verdict = Verdict::Inconclusive;
        rep.diagnostic = std::string("quadrature failure: ") + e.what();
        return rep;
    }
    if (!s.flat) {
        rep.verdict = Verdict::NonRigid;
        rep.diagnostic = "all basis fluxes vanish; the full associate circle exists";
    } else {
        rep.verdict = Verdict::Inconclusive;
        rep.diagnostic = "flat surface; associate angle not identifiable";
    }
    return rep;
}

// Endpoint-gap criterion: the neck image fails to close for every theta in
// (0, 2 pi), so no associate immersion exists. Nodoids at closure
// parameters report the vanishing gap at theta = pi as a non-rigidity
// candidate.
inline RigidityReport certify_delaunay(const DelaunayShape& shape, int n_theta,
                                       double tol = 1e-8)
{
    RigidityReport rep;
    rep.subject = "delaunay r=" + std::to_string(shape.r);
    rep.tolerance = tol;
    rep.gap_sweep = rigidity_gap_sweep(shape, n_theta);
    if (rep.gap_sweep->min_gap > tol) {
        rep.verdict = Verdict::Rigid;
        rep.diagnostic = "neck image endpoints distinct for every sampled theta";
    } else {
        rep.verdict = Verdict::Inconclusive;
        rep.diagnostic =
            "gap vanishes near theta = " + std::to_string(rep.gap_sweep->argmin_theta) +
            "; closure candidate, associate immersion may be well defined there";
    }
    return rep;
}

} // namespace cmcr
