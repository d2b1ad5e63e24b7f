#pragma once

#include <string>
#include <vector>

#include "lrqt/quadrature.hpp"

namespace lrqt {

/// Ising coupling of two dipoles polarised along `field_axis`:
/// V = (1 - 3 cos^2 theta) / r^3.
class DipoleCoupling {
public:
    explicit DipoleCoupling(const Point3& field_axis = {0.0, 0.0, 1.0});

    const Point3& field_axis() const { return axis_; }

    double operator()(const Point3& r) const;
    /// Same angular factor with r^-alpha radial decay.
    double with_exponent(const Point3& r, double alpha) const;

private:
    Point3 axis_;
};

/// dipole_coupling with the default +z field.
double dipole_coupling(const Point3& r);

/// Axis-aligned box of control qubits with unit density.
struct ControlPrism {
    Point3 lower{};
    Point3 extent{1.0, 1.0, 1.0};

    /// Prism occupying x in [x0, x0 + lx], centred on the x axis in y and z.
    static ControlPrism anchored(double lx, double ly, double lz, double x0 = 0.0);

    Point3 upper() const;
    double volume() const;
    bool contains_closed(const Point3& p) const;
    ControlPrism scaled(double factor) const;
};

/**
 * Continuum interaction of the prism with a target outside it:
 * integral over c in the prism of V(c - target), evaluated adaptively to
 * absolute error `quadrature_tol`. Throws InvalidArgument when the target is
 * inside or on the prism, QuadratureError when the tolerance is not reached.
 */
double prism_interaction(const ControlPrism& prism, const Point3& target, double quadrature_tol,
                         const DipoleCoupling& coupling = DipoleCoupling{});

/// Lattice sum of dipole_coupling over the integer points of the prism
/// (closed box), for comparison with the continuum integral.
double prism_lattice_sum(const ControlPrism& prism, const Point3& target,
                         const DipoleCoupling& coupling = DipoleCoupling{});

/**
 * Closed-form x-derivative of the interaction of an lx * ly * lz prism with a
 * point at distance x in front of its face, offset (y, z) from the face
 * centre, field along z. Valid for x > 0, |y| < ly/2, |z| < lz/2; throws
 * InvalidArgument("monotonicity region violated") elsewhere.
 *
 * With s the distance to a face plane and (a, b) an offset to an edge,
 *   G_s(a, b) = a b / ((s^2 + b^2) sqrt(s^2 + a^2 + b^2))
 * is the (y, z) antiderivative of the integrand, and
 *   dV/dx = sum over the four face corners of +/- [G_{x+lx} - G_x].
 */
double dVdx_analytic(const ControlPrism& prism, const Point3& point);

/// Interaction in the face frame: the point (x, y, z) sits x in front of
/// the prism's near face, so this is prism_interaction with the prism
/// anchored at the origin and the target at (-x, -y, -z).
double face_frame_interaction(const ControlPrism& prism, const Point3& point, double quadrature_tol);

enum class DilationKernel { dipolar, isotropic };

std::string to_string(DilationKernel kernel);

struct DilationStep {
    double edge = 0.0;                   // cube edge before the step
    std::vector<double> substep_times;   // one per expanded axis
    std::vector<double> min_coupling;    // smallest |V_j| found per sub-step
    double time = 0.0;
};

/**
 * Successive dilations of a control cube by `factor`, one axis at a time.
 * Each sub-step's duration is pi / (2 min |V_j|) over the newly added slab.
 * The dipolar kernel needs d = 3; the isotropic kernel r^-alpha works in
 * d = 1..3.
 */
struct DilationPlan {
    double initial_edge = 1.0;
    double factor = 2.0;
    int steps = 1;
    double alpha = 3.0;
    int d = 3;
    DilationKernel kernel = DilationKernel::dipolar;

    std::vector<DilationStep> schedule;  // filled by dilation_schedule
    double total_time = 0.0;

    void validate() const;
    std::vector<double> per_step_times() const;
};

struct SlabSampling {
    int face_grid = 32;      // samples per face axis
    int depth_layers = 3;    // interior layers checked for sign changes
    int interior_grid = 8;   // lateral samples per interior layer
};

/**
 * Fills the plan's schedule. `quadrature_tol` is relative: each V_j is
 * integrated to rel_tol = quadrature_tol. The slab minimum of |V_j| is taken
 * on the outer face of the slab (|V| decreases along the expansion axis),
 * searched on a face grid and refined by golden-section search; interior
 * layers are sampled to catch sign changes, which raise
 * NumericalError("zero crossing in slab").
 */
DilationPlan dilation_schedule(DilationPlan plan, double quadrature_tol, const SlabSampling& sampling = {});

}  // namespace lrqt
