#include "lrqt/dipolar.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "lrqt/error.hpp"

namespace lrqt {

namespace {

double norm3(const Point3& v) { return std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]); }

// Antiderivative in (a, b) of (s^2 + a^2 - 2 b^2) / (s^2 + a^2 + b^2)^(5/2).
double face_antiderivative(double s, double a, double b) {
    const double s2 = s * s;
    return a * b / ((s2 + b * b) * std::sqrt(s2 + a * a + b * b));
}

}  // namespace

DipoleCoupling::DipoleCoupling(const Point3& field_axis) {
    const double n = norm3(field_axis);
    if (!(n > 0.0) || !std::isfinite(n)) throw InvalidArgument("field axis must be a non-zero vector");
    axis_ = {field_axis[0] / n, field_axis[1] / n, field_axis[2] / n};
}

double DipoleCoupling::operator()(const Point3& r) const { return with_exponent(r, 3.0); }

double DipoleCoupling::with_exponent(const Point3& r, double alpha) const {
    const double r2 = r[0] * r[0] + r[1] * r[1] + r[2] * r[2];
    if (r2 == 0.0) throw InvalidArgument("dipole coupling undefined at zero separation");
    const double proj = r[0] * axis_[0] + r[1] * axis_[1] + r[2] * axis_[2];
    const double cos2 = proj * proj / r2;
    return (1.0 - 3.0 * cos2) * std::pow(r2, -0.5 * alpha);
}

double dipole_coupling(const Point3& r) {
    static const DipoleCoupling default_field;
    return default_field(r);
}

ControlPrism ControlPrism::anchored(double lx, double ly, double lz, double x0) {
    if (!(lx > 0.0 && ly > 0.0 && lz > 0.0)) throw InvalidArgument("prism edges must be > 0");
    return ControlPrism{{x0, -ly / 2.0, -lz / 2.0}, {lx, ly, lz}};
}

Point3 ControlPrism::upper() const {
    return {lower[0] + extent[0], lower[1] + extent[1], lower[2] + extent[2]};
}

double ControlPrism::volume() const { return extent[0] * extent[1] * extent[2]; }

bool ControlPrism::contains_closed(const Point3& p) const {
    const Point3 hi = upper();
    for (std::size_t k = 0; k < 3; ++k) {
        if (p[k] < lower[k] || p[k] > hi[k]) return false;
    }
    return true;
}

ControlPrism ControlPrism::scaled(double factor) const {
    return ControlPrism{{lower[0] * factor, lower[1] * factor, lower[2] * factor},
                        {extent[0] * factor, extent[1] * factor, extent[2] * factor}};
}

double prism_interaction(const ControlPrism& prism, const Point3& target, double quadrature_tol,
                         const DipoleCoupling& coupling) {
    if (!(prism.extent[0] > 0.0 && prism.extent[1] > 0.0 && prism.extent[2] > 0.0)) {
        throw InvalidArgument("prism edges must be > 0");
    }
    if (!(quadrature_tol > 0.0)) throw InvalidArgument("quadrature tolerance must be > 0");
    if (prism.contains_closed(target)) throw InvalidArgument("integrand singular inside region");
    auto f = [&](const Point3& c) { return coupling({c[0] - target[0], c[1] - target[1], c[2] - target[2]}); };
    QuadratureOptions opts;
    opts.abs_tol = quadrature_tol;
    return integrate_box(f, 3, prism.lower, prism.upper(), opts).value;
}

double prism_lattice_sum(const ControlPrism& prism, const Point3& target, const DipoleCoupling& coupling) {
    const Point3 hi = prism.upper();
    std::array<int, 3> lo_i{}, hi_i{};
    for (std::size_t k = 0; k < 3; ++k) {
        lo_i[k] = static_cast<int>(std::ceil(prism.lower[k]));
        hi_i[k] = static_cast<int>(std::floor(hi[k]));
    }
    double total = 0.0;
    for (int x = lo_i[0]; x <= hi_i[0]; ++x) {
        for (int y = lo_i[1]; y <= hi_i[1]; ++y) {
            for (int z = lo_i[2]; z <= hi_i[2]; ++z) {
                const Point3 r{x - target[0], y - target[1], z - target[2]};
                if (r[0] == 0.0 && r[1] == 0.0 && r[2] == 0.0) continue;
                total += coupling(r);
            }
        }
    }
    return total;
}

double dVdx_analytic(const ControlPrism& prism, const Point3& point) {
    const double lx = prism.extent[0], ly = prism.extent[1], lz = prism.extent[2];
    const double x = point[0], y = point[1], z = point[2];
    if (!(x > 0.0) || !(std::abs(y) < ly / 2.0) || !(std::abs(z) < lz / 2.0)) {
        throw InvalidArgument("monotonicity region violated");
    }
    auto D = [&](double a, double b) { return face_antiderivative(x + lx, a, b) - face_antiderivative(x, a, b); };
    const double ym = y - ly / 2.0, yp = y + ly / 2.0;
    const double zm = z - lz / 2.0, zp = z + lz / 2.0;
    return D(ym, zm) + D(yp, zp) - (D(ym, zp) + D(yp, zm));
}

double face_frame_interaction(const ControlPrism& prism, const Point3& point, double quadrature_tol) {
    const ControlPrism at_origin = ControlPrism::anchored(prism.extent[0], prism.extent[1], prism.extent[2], 0.0);
    return prism_interaction(at_origin, {-point[0], -point[1], -point[2]}, quadrature_tol);
}

std::string to_string(DilationKernel kernel) { return kernel == DilationKernel::dipolar ? "dipolar" : "isotropic"; }

void DilationPlan::validate() const {
    if (!(initial_edge > 0.0) || !std::isfinite(initial_edge)) throw InvalidArgument("initial edge must be > 0");
    if (!(factor > 1.0) || !std::isfinite(factor)) throw InvalidArgument("dilation factor must be > 1");
    if (steps < 1) throw InvalidArgument("dilation needs at least one step");
    if (d < 1 || d > 3) throw InvalidArgument("dimension must be 1, 2 or 3");
    if (!(alpha > 0.0) || !std::isfinite(alpha)) throw InvalidArgument("alpha must be > 0");
    if (kernel == DilationKernel::dipolar && d != 3) throw InvalidArgument("dipolar kernel needs d = 3");
}

std::vector<double> DilationPlan::per_step_times() const {
    std::vector<double> out;
    for (const auto& s : schedule) out.push_back(s.time);
    return out;
}

namespace {

class SlabSearch {
public:
    SlabSearch(const DilationPlan& plan, double rel_tol) : plan_(plan), rel_tol_(rel_tol) {}

    // Coupling of the box [0, extent] (first d axes) with the point p.
    double coupling_at(const Point3& extent, const Point3& p) const {
        const int d = plan_.d;
        const DipoleCoupling field;
        const double alpha = plan_.alpha;
        const bool dipolar = plan_.kernel == DilationKernel::dipolar;
        auto f = [&](const Point3& c) {
            Point3 r{0.0, 0.0, 0.0};
            for (int k = 0; k < d; ++k) r[static_cast<std::size_t>(k)] = c[static_cast<std::size_t>(k)] - p[static_cast<std::size_t>(k)];
            if (dipolar) return field.with_exponent(r, alpha);
            const double r2 = r[0] * r[0] + r[1] * r[1] + r[2] * r[2];
            return std::pow(r2, -0.5 * alpha);
        };
        QuadratureOptions opts;
        opts.abs_tol = std::numeric_limits<double>::min();
        opts.rel_tol = rel_tol_;
        return integrate_box(f, d, Point3{0.0, 0.0, 0.0}, extent, opts).value;
    }

    struct Extremum {
        double min_abs = std::numeric_limits<double>::infinity();
        int sign = 0;
    };

    // Smallest |V| over the slab added when axis `axis` of the box grows
    // from extent[axis] to new_edge.
    Extremum scan(const Point3& extent, int axis, double new_edge, const SlabSampling& sampling) const {
        const int d = plan_.d;
        std::vector<int> lateral;
        for (int k = 0; k < d; ++k) {
            if (k != axis) lateral.push_back(k);
        }
        const double old_edge = extent[static_cast<std::size_t>(axis)];
        Extremum ext;
        auto record = [&](double v) {
            if (v == 0.0 || !std::isfinite(v)) throw NumericalError("zero crossing in slab");
            const int s = v > 0.0 ? 1 : -1;
            if (ext.sign != 0 && s != ext.sign) throw NumericalError("zero crossing in slab");
            ext.sign = s;
            ext.min_abs = std::min(ext.min_abs, std::abs(v));
        };
        auto point_at = [&](double depth, const std::vector<double>& lat) {
            Point3 p{0.0, 0.0, 0.0};
            p[static_cast<std::size_t>(axis)] = depth;
            for (std::size_t i = 0; i < lateral.size(); ++i) p[static_cast<std::size_t>(lateral[i])] = lat[i];
            return p;
        };
        auto grid_coords = [&](int n, std::size_t lat_axis) {
            std::vector<double> out;
            const double span = extent[static_cast<std::size_t>(lateral[lat_axis])];
            if (n <= 1) return std::vector<double>{span / 2.0};
            for (int i = 0; i < n; ++i) out.push_back(span * i / (n - 1));
            return out;
        };

        // Interior layers: sign consistency.
        for (int layer = 1; layer < sampling.depth_layers; ++layer) {
            const double depth = old_edge + (new_edge - old_edge) * layer / sampling.depth_layers;
            for_each_lateral(sampling.interior_grid, grid_coords, lateral.size(), [&](const std::vector<double>& lat) {
                record(coupling_at(extent, point_at(depth, lat)));
            });
        }

        // Outer face: grid search for min |V|, then golden-section refinement.
        std::vector<double> best_lat;
        double best = std::numeric_limits<double>::infinity();
        for_each_lateral(sampling.face_grid, grid_coords, lateral.size(), [&](const std::vector<double>& lat) {
            const double v = coupling_at(extent, point_at(new_edge, lat));
            record(v);
            if (std::abs(v) < best) {
                best = std::abs(v);
                best_lat = lat;
            }
        });
        for (int sweep = 0; sweep < 2 && !lateral.empty(); ++sweep) {
            for (std::size_t i = 0; i < lateral.size(); ++i) {
                const double span = extent[static_cast<std::size_t>(lateral[i])];
                const double cell = span / std::max(1, sampling.face_grid - 1);
                const double lo = std::max(0.0, best_lat[i] - cell);
                const double hi = std::min(span, best_lat[i] + cell);
                auto g = [&](double u) {
                    std::vector<double> lat = best_lat;
                    lat[i] = u;
                    const double v = coupling_at(extent, point_at(new_edge, lat));
                    record(v);
                    return std::abs(v);
                };
                const double u = golden_section_min(g, lo, hi);
                const double gu = g(u);
                if (gu < best) {
                    best = gu;
                    best_lat[i] = u;
                }
            }
        }
        return ext;
    }

private:
    template <typename GridFn, typename F>
    static void for_each_lateral(int n, GridFn& grid_coords, std::size_t lateral_count, F&& f) {
        if (lateral_count == 0) {
            f(std::vector<double>{});
            return;
        }
        const auto u = grid_coords(n, 0);
        if (lateral_count == 1) {
            for (double a : u) f(std::vector<double>{a});
            return;
        }
        const auto v = grid_coords(n, 1);
        for (double a : u) {
            for (double b : v) f(std::vector<double>{a, b});
        }
    }

    template <typename G>
    static double golden_section_min(G& g, double lo, double hi) {
        const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
        double a = lo, b = hi;
        double c = b - inv_phi * (b - a);
        double e = a + inv_phi * (b - a);
        double gc = g(c), ge = g(e);
        for (int iter = 0; iter < 30 && (b - a) > 1e-9 * std::max(1.0, std::abs(hi)); ++iter) {
            if (gc < ge) {
                b = e;
                e = c;
                ge = gc;
                c = b - inv_phi * (b - a);
                gc = g(c);
            } else {
                a = c;
                c = e;
                gc = ge;
                e = a + inv_phi * (b - a);
                ge = g(e);
            }
        }
        return gc < ge ? c : e;
    }

    const DilationPlan& plan_;
    double rel_tol_;
};

}  // namespace

DilationPlan dilation_schedule(DilationPlan plan, double quadrature_tol, const SlabSampling& sampling) {
    plan.validate();
    if (!(quadrature_tol > 0.0 && quadrature_tol < 1.0)) throw InvalidArgument("quadrature tolerance must lie in (0, 1)");
    if (sampling.face_grid < 2 || sampling.depth_layers < 1 || sampling.interior_grid < 1) {
        throw InvalidArgument("slab sampling needs face_grid >= 2 and positive layer counts");
    }
    SlabSearch search(plan, quadrature_tol);
    plan.schedule.clear();
    plan.total_time = 0.0;
    double edge = plan.initial_edge;
    for (int n = 0; n < plan.steps; ++n) {
        DilationStep step;
        step.edge = edge;
        const double grown = edge * plan.factor;
        Point3 extent{0.0, 0.0, 0.0};
        for (int k = 0; k < plan.d; ++k) extent[static_cast<std::size_t>(k)] = edge;
        for (int axis = 0; axis < plan.d; ++axis) {
            const auto ext = search.scan(extent, axis, grown, sampling);
            step.min_coupling.push_back(ext.min_abs);
            step.substep_times.push_back(std::numbers::pi / (2.0 * ext.min_abs));
            extent[static_cast<std::size_t>(axis)] = grown;
        }
        for (double t : step.substep_times) step.time += t;
        plan.total_time += step.time;
        plan.schedule.push_back(std::move(step));
        edge = grown;
    }
    return plan;
}

}  // namespace lrqt
