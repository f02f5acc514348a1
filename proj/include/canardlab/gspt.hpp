#pragma once

// Slow-fast decomposition of the Leslie-Gower system: layer field, critical
// manifold M0 = {u = 0} ∪ {v = g(u)}, stability of its branches, fold
// points, reduced flow and the singular cycle built from them.

#include <string>
#include <variant>
#include <vector>

#include "canardlab/model.hpp"
#include "canardlab/sysdef.hpp"
#include "canardlab/types.hpp"

namespace canardlab {

inline constexpr double kFoldTolerance = 1e-10;
inline constexpr double kManifoldTolerance = 1e-12;

enum class Stability { Attractive, Repulsive, Fold };
enum class BranchKind { VerticalAxis, Parabola };

const char* to_string(Stability s);
const char* to_string(BranchKind k);

struct ManifoldClassification {
    Vec2 point{};
    BranchKind branch = BranchKind::VerticalAxis;
    double fprime_u = 0.0;         ///< by automatic differentiation of the system's fast equation
    double fprime_u_closed = 0.0;  ///< closed form for the branch
    Stability tag = Stability::Fold;
};

struct ManifoldBranch {
    BranchKind kind = BranchKind::VerticalAxis;
    std::vector<ManifoldClassification> samples;
};

struct FoldData {
    Vec2 canard_point;  ///< B = P = (0, e1/a)
    Vec2 jump_point;    ///< D = (ū, g(ū)), ū = (1 - e1)/2
};

/// Layer (fast) field: (F(u, v), 0).
Vec2 layer_field(const ModelParams& p, const Vec2& state);

/// Closed forms of F'_u on the two branches of M0.
double fprime_u_axis(const ModelParams& p, double v);
double fprime_u_parabola(const ModelParams& p, double u);

/// Classifies points of M0 for a system given in the text DSL, cross-checking
/// AD against the closed forms.  Disagreement above the fold tolerance throws.
class Classifier {
public:
    explicit Classifier(const ModelParams& p);
    Classifier(const ModelParams& p, PlanarSlowFastSystem system);

    /// Throws DomainError if the point is not on M0.
    ManifoldClassification classify(const Vec2& point) const;

    const ModelParams& params() const { return p_; }
    const PlanarSlowFastSystem& system() const { return system_; }

private:
    ModelParams p_;
    PlanarSlowFastSystem system_;
};

FoldData fold_points(const ModelParams& p);

/// Samples both branches: `n` points on the axis over v ∈ [0, v_max] and
/// `n` on the parabola over u ∈ [0, 1].  The grid point nearest to each fold
/// is moved onto the fold.
std::vector<ManifoldBranch> sample_manifold(const Classifier& c, int n, double v_max);

struct ReducedVelocity {
    double du = 0.0;  ///< slow-time velocity along the branch
    double dv = 0.0;
};

/// Signal returned at a fold point instead of a velocity.
struct JumpPoint {
    Vec2 point{};
};

using ReducedFlow = std::variant<ReducedVelocity, JumpPoint>;

/// Reduced (slow-time) flow on M0.  On the axis du = 0.  Throws DomainError
/// for points off M0.
ReducedFlow reduced_flow(const ModelParams& p, const Vec2& point_on_m0);

struct BlowupConstants;

/// γ' = [A,B'] ∪ [B',C] ∪ ζ ∪ [D,A].
struct SingularCycle {
    Vec2 a_vertex{};
    Vec2 b_vertex{};
    Vec2 c_vertex{};
    Vec2 d_vertex{};
    double alpha = 0.0;
    double k = 0.0;
    double c1 = 0.0;
    double c2 = 0.0;
    double fiber_level = 0.0;  ///< e1/a + α + c2/(c1 k)
    double u_star = 0.0;       ///< right-branch root of g(u) = fiber_level
    std::vector<Vec2> arc;     ///< ζ from C (u = u_star) to D (u = ū), uniform in u

    /// Closed polyline A, B', C, ζ..., D, A.
    std::vector<Vec2> polyline() const;
};

inline constexpr int kDefaultArcSamples = 512;

/// Throws GeometryError if the fiber level is not in (0, g(ū)).
SingularCycle singular_cycle(const ModelParams& p, double alpha, double k, int arc_samples = kDefaultArcSamples);

}  // namespace canardlab
