#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>

#include "anisodnl/grid.hpp"

namespace anisodnl {

/// CSV with header `x1,...,xN,value`, one row per node in grid order.
void write_field_csv(std::ostream& out, const ScalarField& field);

/// CSV with header `t,x1,...,xN,value`, frames in order.
void write_series_csv(std::ostream& out, const TimeSeries& series);

/// Binary checkpoint layout, version 1 (host byte order, little-endian on
/// every supported platform):
///
///   char[8]  magic "ANISODNL"
///   u32      version (= 1)
///   u32      N
///   u64[N]   node counts
///   f64[N]   box extents
///   u64      frame count F
///   F times: f64 t, f64[size] nodal values
inline constexpr std::uint32_t kCheckpointVersion = 1;

void save_checkpoint(std::ostream& out, const TimeSeries& series);
void save_checkpoint(const std::filesystem::path& path, const TimeSeries& series);
TimeSeries load_checkpoint(std::istream& in);
TimeSeries load_checkpoint(const std::filesystem::path& path);

}  // namespace anisodnl
