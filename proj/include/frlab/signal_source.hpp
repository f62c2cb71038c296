#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include "frlab/signal.hpp"
#include "frlab/system.hpp"

namespace frlab {

/// Builds a test signal on the system's group.
///
///   sparse:S      S unit-modulus random-phase spikes at distinct random
///                 coefficient positions, synthesized
///   harmonic      coefficients 1, 1/2, ..., 1/M, synthesized
///   rademacher    independent +-1 values
///   row-delta:A   random complex g on the leading factors, supported on the
///                 slice where the last coordinate equals A
///   file:PATH     read_signal(PATH)
Signal generate_signal(const std::string& spec, const OrthonormalSystem& system, std::uint64_t seed);

/// Text format: a header line "group <factors>", then one "index real imag"
/// line per element. Values use shortest round-trip formatting.
void write_signal(std::ostream& out, const Signal& f);
Signal read_signal(std::istream& in);
void save_signal(const std::string& path, const Signal& f);
Signal load_signal(const std::string& path);

}  // namespace frlab
