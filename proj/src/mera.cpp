#include "lrqt/mera.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <set>

#include "lrqt/error.hpp"
#include "lrqt/protocol.hpp"

namespace lrqt {

int mera_layer_count(long long L, int phi) {
    if (phi < 2) throw InvalidArgument("phi must be >= 2");
    if (L < phi) throw InvalidArgument("L must be a power of phi (got L=" + std::to_string(L) + ")");
    int S = 0;
    long long rest = L;
    while (rest % phi == 0) {
        rest /= phi;
        ++S;
    }
    if (rest != 1) {
        throw InvalidArgument("L must be a power of phi (got L=" + std::to_string(L) + ", phi=" + std::to_string(phi) + ")");
    }
    return S;
}

MeraPlan mera_time_bound(long long L, int phi, double alpha, int d) {
    if (d < 1) throw InvalidArgument("d must be >= 1");
    if (!std::isfinite(alpha) || alpha < 0.0) throw InvalidArgument("alpha must be finite and >= 0");
    MeraPlan plan;
    plan.L = L;
    plan.phi = phi;
    plan.d = d;
    plan.alpha = alpha;
    const int S = mera_layer_count(L, phi);

    double beta = 0.0;
    bool marginal = false;
    if (alpha < d) {
        plan.regime = "alpha<d: log";
    } else if (alpha == d) {
        plan.regime = "alpha=d: log^2";
        marginal = true;
    } else if (alpha <= d + 1) {
        plan.regime = "d<alpha<=d+1: L^(alpha-d)";
        beta = alpha - d;
    } else {
        plan.regime = "alpha>d+1: L";
        beta = 1.0;
    }

    for (int tau = 0; tau < S; ++tau) {
        MeraLayerBound layer;
        layer.tau = tau;
        layer.length_scale = std::pow(static_cast<double>(phi), tau);
        layer.term = marginal ? 1.0 + tau : std::pow(layer.length_scale, beta);
        plan.total_time += layer.term;
        plan.layers.push_back(layer);
    }
    return plan;
}

std::string to_string(MeraGateKind kind) { return kind == MeraGateKind::isometry ? "isometry" : "disentangler"; }

std::string to_string(MeraGateChoice choice) {
    return choice == MeraGateChoice::identity ? "identity" : "fixed_entangler";
}

MeraGateChoice parse_mera_gate_choice(const std::string& text) {
    if (text == "identity") return MeraGateChoice::identity;
    if (text == "fixed_entangler" || text == "fixed-entangler") return MeraGateChoice::fixed_entangler;
    throw InvalidArgument("unknown gate choice '" + text + "'");
}

namespace {

using Matrix2 = std::array<Complex, 4>;

Matrix2 ry(double theta) {
    const double c = std::cos(theta / 2), s = std::sin(theta / 2);
    return {Complex{c, 0}, Complex{-s, 0}, Complex{s, 0}, Complex{c, 0}};
}

Matrix2 hadamard() {
    const double h = 1.0 / std::numbers::sqrt2;
    return {Complex{h, 0}, Complex{h, 0}, Complex{h, 0}, Complex{-h, 0}};
}

Matrix4 kron(const Matrix2& a, const Matrix2& b) {
    Matrix4 out{};
    for (int r1 = 0; r1 < 2; ++r1)
        for (int r2 = 0; r2 < 2; ++r2)
            for (int c1 = 0; c1 < 2; ++c1)
                for (int c2 = 0; c2 < 2; ++c2)
                    out[static_cast<std::size_t>(4 * (2 * r1 + r2) + 2 * c1 + c2)] =
                        a[static_cast<std::size_t>(2 * r1 + c1)] * b[static_cast<std::size_t>(2 * r2 + c2)];
    return out;
}

Matrix4 multiply(const Matrix4& a, const Matrix4& b) {
    Matrix4 out{};
    for (std::size_t r = 0; r < 4; ++r)
        for (std::size_t c = 0; c < 4; ++c)
            for (std::size_t k = 0; k < 4; ++k) out[4 * r + c] += a[4 * r + k] * b[4 * k + c];
    return out;
}

Matrix4 diagonal(Complex a, Complex b, Complex c, Complex d) {
    Matrix4 out{};
    out[0] = a;
    out[5] = b;
    out[10] = c;
    out[15] = d;
    return out;
}

Matrix4 cnot() {
    Matrix4 out{};
    out[0] = out[5] = out[11] = out[14] = 1.0;
    return out;
}

// Walks the layers in order and throws on the first site that a gate needs
// in |0> but that already carries state.
void verify_scratch(const MeraSchedule& schedule) {
    std::set<int> live{0};
    auto conflict = [](int tau, int site) {
        throw NumericalError("scratch conflict at layer " + std::to_string(tau) + ", site " + std::to_string(site));
    };
    auto check_route = [&](const MeraGate& g, int tau) {
        for (int s = g.first + 1; s < g.second; ++s)
            if (live.count(s)) conflict(tau, s);
    };
    for (const auto& layer : schedule.layers) {
        for (const auto& g : layer.isometries) {
            if (!live.count(g.first)) conflict(layer.tau, g.first);
            if (live.count(g.second)) conflict(layer.tau, g.second);
            check_route(g, layer.tau);
            live.insert(g.second);
        }
        for (const auto& g : layer.disentanglers) {
            if (!live.count(g.first)) conflict(layer.tau, g.first);
            if (!live.count(g.second)) conflict(layer.tau, g.second);
            check_route(g, layer.tau);
        }
    }
}

PureState checked_input(const MeraSchedule& schedule, std::optional<PureState> input) {
    if (!input) return mera_reference_input(schedule.L);
    if (input->qubit_count() != schedule.L) throw InvalidArgument("input state must have one qubit per site");
    return std::move(*input);
}

}  // namespace

Matrix4 mera_gate_matrix(MeraGateChoice choice, MeraGateKind kind) {
    if (choice == MeraGateChoice::identity) return diagonal(1.0, 1.0, 1.0, 1.0);
    if (kind == MeraGateKind::isometry) return multiply(cnot(), kron(ry(0.5), hadamard()));
    const Matrix4 phases = diagonal(1.0, std::polar(1.0, 0.4), std::polar(1.0, 0.9), std::polar(1.0, -0.3));
    return multiply(phases, multiply(cnot(), kron(ry(0.7), ry(1.1))));
}

PureState mera_reference_input(int L) {
    if (L < 1 || L > kMaxQubits) throw InvalidArgument("replay needs 1 <= L <= " + std::to_string(kMaxQubits));
    std::vector<std::array<Complex, 2>> factors(static_cast<std::size_t>(L), {Complex{1.0, 0.0}, Complex{0.0, 0.0}});
    factors[0] = {Complex{std::cos(0.3), 0.0}, std::polar(std::sin(0.3), 0.7)};
    return PureState::product(factors);
}

MeraSchedule build_mera_schedule(int L, double alpha, ScheduleMode mode, double local_gate_time) {
    const int S = mera_layer_count(L, 2);
    if (!(local_gate_time >= 0.0) || !std::isfinite(local_gate_time)) {
        throw InvalidArgument("local gate time must be finite and >= 0");
    }
    MeraSchedule schedule;
    schedule.L = L;
    schedule.alpha = alpha;
    schedule.mode = mode;
    schedule.local_gate_time = local_gate_time;

    auto lower = [&](MeraGateKind kind, int first, int second) {
        MeraGate g;
        g.kind = kind;
        g.first = first;
        g.second = second;
        g.transfer = PulseProgram(L);
        const int n = second - first;
        if (n > 1) {
            LatticeSpec chain = LatticeSpec::chain(n, alpha);
            std::swap(chain.source, chain.destination);
            std::vector<int> mapping(static_cast<std::size_t>(n));
            for (int k = 0; k < n; ++k) mapping[static_cast<std::size_t>(k)] = first + 1 + k;
            g.transfer = build_transfer_program(chain, mode, ProtocolPhase::full_transfer).remapped(mapping, L);
        }
        g.time = 2.0 * g.transfer.elapsed() + local_gate_time;
        return g;
    };

    for (int tau = S - 1; tau >= 0; --tau) {
        MeraLayer layer;
        layer.tau = tau;
        layer.length_scale = 1 << tau;
        const int count = L / layer.length_scale;
        auto site = [&](int k) { return k * layer.length_scale; };
        for (int k = 0; 2 * k + 1 < count; ++k) {
            layer.isometries.push_back(lower(MeraGateKind::isometry, site(2 * k), site(2 * k + 1)));
        }
        for (int k = 0; 2 * k + 2 < count; ++k) {
            layer.disentanglers.push_back(lower(MeraGateKind::disentangler, site(2 * k + 1), site(2 * k + 2)));
        }
        double iso = 0.0, dis = 0.0;
        for (const auto& g : layer.isometries) iso = std::max(iso, g.time);
        for (const auto& g : layer.disentanglers) dis = std::max(dis, g.time);
        layer.time = iso + dis;
        schedule.total_time += layer.time;
        schedule.layers.push_back(std::move(layer));
    }
    verify_scratch(schedule);
    return schedule;
}

void check_mera_schedule(const MeraSchedule& schedule) { verify_scratch(schedule); }

PureState replay_mera(const MeraSchedule& schedule, MeraGateChoice choice, std::optional<PureState> input) {
    PureState state = checked_input(schedule, std::move(input));
    auto run = [&](const MeraGate& g) {
        const Matrix4 u = mera_gate_matrix(choice, g.kind);
        if (g.transfer.steps().empty()) {
            apply_two_qubit(state, g.first, g.second, u);
            return;
        }
        g.transfer.run(state);
        apply_two_qubit(state, g.first, g.first + 1, u);
        g.transfer.inverse().run(state);
    };
    for (const auto& layer : schedule.layers) {
        for (const auto& g : layer.isometries) run(g);
        for (const auto& g : layer.disentanglers) run(g);
    }
    return state;
}

PureState apply_mera_direct(const MeraSchedule& schedule, MeraGateChoice choice, std::optional<PureState> input) {
    PureState state = checked_input(schedule, std::move(input));
    for (const auto& layer : schedule.layers) {
        for (const auto& g : layer.isometries) apply_two_qubit(state, g.first, g.second, mera_gate_matrix(choice, g.kind));
        for (const auto& g : layer.disentanglers) {
            apply_two_qubit(state, g.first, g.second, mera_gate_matrix(choice, g.kind));
        }
    }
    return state;
}

}  // namespace lrqt
