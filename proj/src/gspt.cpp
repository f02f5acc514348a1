#include "canardlab/gspt.hpp"

#include <cmath>
#include <cstdio>

#include "canardlab/blowup.hpp"
#include "canardlab/error.hpp"

namespace canardlab {

const char* to_string(Stability s) {
    switch (s) {
        case Stability::Attractive: return "attractive";
        case Stability::Repulsive: return "repulsive";
        case Stability::Fold: return "fold";
    }
    return "?";
}

const char* to_string(BranchKind k) { return k == BranchKind::VerticalAxis ? "axis" : "parabola"; }

Vec2 layer_field(const ModelParams& p, const Vec2& state) { return {vector_field(p, state)[0], 0.0}; }

double fprime_u_axis(const ModelParams& p, double v) { return 1.0 - p.a * v / p.e1; }

double fprime_u_parabola(const ModelParams& p, double u) {
    return u / (u + p.e1) * (-2.0 * u + (1.0 - p.e1));
}

Classifier::Classifier(const ModelParams& p) : Classifier(p, leslie_gower_system(p)) {}

Classifier::Classifier(const ModelParams& p, PlanarSlowFastSystem system) : p_(p), system_(std::move(system)) {}

ManifoldClassification Classifier::classify(const Vec2& point) const {
    ManifoldClassification out;
    out.point = point;
    if (point[0] == 0.0) {
        out.branch = BranchKind::VerticalAxis;
        out.fprime_u_closed = fprime_u_axis(p_, point[1]);
    } else if (std::abs(point[1] - g(p_, point[0])) < kManifoldTolerance) {
        out.branch = BranchKind::Parabola;
        out.fprime_u_closed = fprime_u_parabola(p_, point[0]);
    } else {
        char msg[160];
        std::snprintf(msg, sizeof msg, "point (%.17g, %.17g) is not on the critical manifold", point[0], point[1]);
        throw DomainError(msg);
    }
    out.fprime_u = system_.df_du(point);
    if (!(std::abs(out.fprime_u - out.fprime_u_closed) <= kFoldTolerance)) {
        char msg[200];
        std::snprintf(msg, sizeof msg, "F'_u disagreement at (%.17g, %.17g): AD %.17g vs closed form %.17g", point[0],
                      point[1], out.fprime_u, out.fprime_u_closed);
        throw NumericalError(msg);
    }
    if (out.fprime_u < -kFoldTolerance) {
        out.tag = Stability::Attractive;
    } else if (out.fprime_u > kFoldTolerance) {
        out.tag = Stability::Repulsive;
    } else {
        out.tag = Stability::Fold;
    }
    return out;
}

FoldData fold_points(const ModelParams& p) {
    const double ubar = (1.0 - p.e1) / 2.0;
    return FoldData{{0.0, p.e1 / p.a}, {ubar, g(p, ubar)}};
}

std::vector<ManifoldBranch> sample_manifold(const Classifier& c, int n, double v_max) {
    if (n < 2) throw Error(ErrorCode::InvalidArgument, "need at least 2 samples per branch");
    if (!(v_max > 0.0)) throw Error(ErrorCode::InvalidArgument, "v_max must be positive");
    const ModelParams& p = c.params();
    const FoldData folds = fold_points(p);

    auto grid = [n](double lo, double hi, double pin) {
        std::vector<double> xs(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) xs[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / (n - 1);
        if (pin >= lo && pin <= hi) {
            const auto idx = static_cast<std::size_t>(std::lround((pin - lo) / (hi - lo) * (n - 1)));
            xs[idx] = pin;
        }
        return xs;
    };

    ManifoldBranch axis{BranchKind::VerticalAxis, {}};
    for (double v : grid(0.0, v_max, folds.canard_point[1])) axis.samples.push_back(c.classify({0.0, v}));
    ManifoldBranch parabola{BranchKind::Parabola, {}};
    for (double u : grid(0.0, 1.0, folds.jump_point[0])) {
        auto cls = c.classify({u, g(p, u)});
        cls.branch = BranchKind::Parabola;
        parabola.samples.push_back(cls);
    }
    return {axis, parabola};
}

ReducedFlow reduced_flow(const ModelParams& p, const Vec2& point) {
    const Classifier c(p);
    const auto cls = c.classify(point);
    if (cls.tag == Stability::Fold) return JumpPoint{point};
    if (cls.branch == BranchKind::VerticalAxis) {
        const double v = point[1];
        return ReducedVelocity{0.0, v * (1.0 - v / p.e2)};
    }
    const double u = point[0];
    const double gu = g(p, u);
    const double growth = 1.0 - gu / (u + p.e2);
    return ReducedVelocity{gu / g_prime(p, u) * growth, gu * growth};
}

std::vector<Vec2> SingularCycle::polyline() const {
    std::vector<Vec2> out;
    out.reserve(arc.size() + 3);
    out.push_back(a_vertex);
    out.push_back(b_vertex);
    // The arc starts at C and ends at D.
    out.insert(out.end(), arc.begin(), arc.end());
    out.push_back(a_vertex);
    return out;
}

SingularCycle singular_cycle(const ModelParams& p, double alpha, double k, int arc_samples) {
    if (!(k > 0.0)) throw GeometryError("k must be positive");
    if (!(alpha >= 0.0)) throw GeometryError("alpha must be non-negative");
    if (arc_samples < 2) throw Error(ErrorCode::InvalidArgument, "arc needs at least 2 samples");
    const BlowupConstants bc = blowup_constants(p);
    const FoldData folds = fold_points(p);
    const double ubar = folds.jump_point[0];
    const double top = folds.jump_point[1];

    SingularCycle sc;
    sc.alpha = alpha;
    sc.k = k;
    sc.c1 = bc.c1;
    sc.c2 = bc.c2;
    sc.fiber_level = p.e1 / p.a + alpha + bc.c2 / (bc.c1 * k);
    if (!(sc.fiber_level > 0.0)) {
        char msg[160];
        std::snprintf(msg, sizeof msg, "fiber level %.6g is not positive (k = %.6g too small)", sc.fiber_level, k);
        throw GeometryError(msg);
    }
    if (!(sc.fiber_level < top)) {
        char msg[160];
        std::snprintf(msg, sizeof msg, "fiber level %.6g is above max g = %.6g; no right-branch intersection",
                      sc.fiber_level, top);
        throw GeometryError(msg);
    }
    // g(u) = L  <=>  u^2 - (1 - e1) u - (e1 - a L) = 0; take the root above ū.
    const double b = 1.0 - p.e1;
    const double disc = b * b + 4.0 * (p.e1 - p.a * sc.fiber_level);
    sc.u_star = 0.5 * (b + std::sqrt(disc));

    sc.a_vertex = {0.0, top};
    sc.b_vertex = {0.0, sc.fiber_level};
    sc.c_vertex = {sc.u_star, sc.fiber_level};
    sc.d_vertex = folds.jump_point;
    sc.arc.reserve(static_cast<std::size_t>(arc_samples));
    for (int i = 0; i < arc_samples; ++i) {
        const double u = sc.u_star + (ubar - sc.u_star) * i / (arc_samples - 1);
        sc.arc.push_back({u, g(p, u)});
    }
    // Endpoints of the arc are the C and D vertices exactly.
    sc.arc.front() = sc.c_vertex;
    sc.arc.back() = sc.d_vertex;
    return sc;
}

}  // namespace canardlab
