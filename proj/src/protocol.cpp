#include "lrqt/protocol.hpp"

#include <cmath>
#include <string>

#include "lrqt/error.hpp"
#include "lrqt/growth.hpp"

namespace lrqt {

std::string to_string(ProtocolPhase phase) {
    return phase == ProtocolPhase::ghz_only ? "ghz_only" : "full_transfer";
}

ProtocolPhase parse_protocol_phase(const std::string& text) {
    if (text == "ghz_only") return ProtocolPhase::ghz_only;
    if (text == "full_transfer") return ProtocolPhase::full_transfer;
    throw InvalidArgument("unknown protocol phase '" + text + "'");
}

namespace {

void check_register(const LatticeSpec& lattice) {
    lattice.validate();
    if (lattice.site_count() > static_cast<std::size_t>(kMaxQubits)) {
        throw InvalidArgument("lattice has " + std::to_string(lattice.site_count()) + " sites; the simulator caps at " +
                              std::to_string(kMaxQubits) + " qubits");
    }
}

}  // namespace

PulseProgram build_ghz_program(const LatticeSpec& lattice, ScheduleMode mode) {
    lattice.validate();
    const GrowthRun run = run_growth(lattice, mode, true);
    std::vector<Coord> coords;
    for (std::size_t i = 0; i < lattice.site_count(); ++i) coords.push_back(lattice.coord_of(i));

    PulseProgram program(static_cast<int>(lattice.site_count()));
    for (const auto& seg : run.segments) {
        ControlledXStep step;
        step.duration = seg.duration;
        for (std::size_t t : seg.targets) {
            for (std::size_t c : seg.controls) {
                step.terms.push_back(ControlledXTerm{static_cast<int>(c), static_cast<int>(t),
                                                     coupling(coords[c], coords[t], lattice.alpha)});
            }
        }
        program.add(std::move(step));
    }
    return program;
}

PulseProgram build_transfer_program(const LatticeSpec& lattice, ScheduleMode mode, ProtocolPhase phase) {
    PulseProgram program = build_ghz_program(lattice, mode);
    if (phase == ProtocolPhase::full_transfer) {
        LatticeSpec mirrored = lattice;
        std::swap(mirrored.source, mirrored.destination);
        program.append(build_ghz_program(mirrored, mode).inverse());
    }
    return program;
}

PureState ghz_target(int qubits, Complex a, Complex b) {
    PureState s(qubits);
    auto amps = s.amplitudes();
    Complex phase{1.0, 0.0};
    for (int k = 1; k < qubits; ++k) phase *= Complex{0.0, -1.0};
    amps[0] = a;
    amps[amps.size() - 1] = phase * b;
    return s;
}

TransferReport run_protocol(const LatticeSpec& lattice, Complex a, Complex b, ScheduleMode mode,
                            ProtocolPhase phase) {
    check_register(lattice);
    if (std::abs(std::norm(a) + std::norm(b) - 1.0) > 1e-12) throw InvalidArgument("|a|^2 + |b|^2 must equal 1");
    const int n = static_cast<int>(lattice.site_count());
    const int src = static_cast<int>(lattice.index_of(lattice.source));
    const int dst = static_cast<int>(lattice.index_of(lattice.destination));

    const PulseProgram build = build_ghz_program(lattice, mode);
    PulseProgram program = build;
    if (phase == ProtocolPhase::full_transfer) {
        LatticeSpec mirrored = lattice;
        std::swap(mirrored.source, mirrored.destination);
        program.append(build_ghz_program(mirrored, mode).inverse());
    }

    PureState probe = PureState::basis(n, std::uint64_t{1} << (n - 1 - src));
    build.run(probe);

    PureState state(n);
    {
        auto amps = state.amplitudes();
        amps[0] = a;
        amps[std::uint64_t{1} << (n - 1 - src)] = b;
    }
    program.run(state);

    TransferReport report;
    report.ghz_phase = probe.amplitude(probe.dimension() - 1);
    report.elapsed = program.elapsed();
    report.phase = phase;
    if (phase == ProtocolPhase::ghz_only) {
        report.fidelity = fidelity(ghz_target(n, a, b), state);
    } else {
        PureState target(n);
        auto amps = target.amplitudes();
        amps[0] = a;
        amps[std::uint64_t{1} << (n - 1 - dst)] = b;
        report.fidelity = fidelity(target, state);
    }
    report.final_state = std::move(state);
    return report;
}

}  // namespace lrqt
