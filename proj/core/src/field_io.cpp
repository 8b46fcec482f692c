#include "anisodnl/field_io.hpp"

#include <array>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <iomanip>
#include <ostream>

#include "anisodnl/errors.hpp"

namespace anisodnl {
namespace {

constexpr std::array<char, 8> kMagic{'A', 'N', 'I', 'S', 'O', 'D', 'N', 'L'};

void write_header(std::ostream& out, const Grid& grid, bool with_time) {
  if (with_time) out << "t,";
  for (std::size_t j = 0; j < grid.dim(); ++j) out << 'x' << (j + 1) << ',';
  out << "value\n";
}

void write_rows(std::ostream& out, const ScalarField& field, bool with_time) {
  const Grid& grid = field.grid();
  std::vector<double> x(grid.dim());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    grid.point(i, x);
    if (with_time) out << field.time() << ',';
    for (double c : x) out << c << ',';
    out << field[i] << '\n';
  }
}

template <typename T>
void put(std::ostream& out, T value) {
  out.write(reinterpret_cast<const char*>(&value), sizeof(T));
}

template <typename T>
T get(std::istream& in) {
  T value{};
  in.read(reinterpret_cast<char*>(&value), sizeof(T));
  if (!in) throw Error("checkpoint: truncated stream");
  return value;
}

}  // namespace

void write_field_csv(std::ostream& out, const ScalarField& field) {
  const auto flags = out.flags();
  out << std::setprecision(17);
  write_header(out, field.grid(), false);
  write_rows(out, field, false);
  out.flags(flags);
}

void write_series_csv(std::ostream& out, const TimeSeries& series) {
  const auto flags = out.flags();
  out << std::setprecision(17);
  write_header(out, series.grid(), true);
  for (const auto& frame : series) write_rows(out, frame, true);
  out.flags(flags);
}

void save_checkpoint(std::ostream& out, const TimeSeries& series) {
  const Grid& grid = series.grid();
  out.write(kMagic.data(), kMagic.size());
  put<std::uint32_t>(out, kCheckpointVersion);
  put<std::uint32_t>(out, static_cast<std::uint32_t>(grid.dim()));
  for (std::size_t c : grid.counts()) put<std::uint64_t>(out, c);
  for (double l : grid.extents()) put<double>(out, l);
  put<std::uint64_t>(out, series.size());
  for (const auto& frame : series) {
    put<double>(out, frame.time());
    const auto values = frame.values();
    out.write(reinterpret_cast<const char*>(values.data()),
              static_cast<std::streamsize>(values.size() * sizeof(double)));
  }
  if (!out) throw Error("checkpoint: write failed");
}

void save_checkpoint(const std::filesystem::path& path, const TimeSeries& series) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("checkpoint: cannot open " + path.string());
  save_checkpoint(out, series);
}

TimeSeries load_checkpoint(std::istream& in) {
  std::array<char, 8> magic{};
  in.read(magic.data(), magic.size());
  if (!in || magic != kMagic) throw Error("checkpoint: bad magic");
  const auto version = get<std::uint32_t>(in);
  if (version != kCheckpointVersion) throw Error("checkpoint: unsupported version " + std::to_string(version));
  const auto dim = get<std::uint32_t>(in);
  if (dim == 0 || dim > 16) throw Error("checkpoint: implausible dimension");
  std::vector<std::size_t> counts(dim);
  std::vector<double> extents(dim);
  for (auto& c : counts) c = static_cast<std::size_t>(get<std::uint64_t>(in));
  for (auto& l : extents) l = get<double>(in);
  auto grid = make_grid(counts, extents);
  const auto frames = get<std::uint64_t>(in);
  TimeSeries series(grid);
  for (std::uint64_t n = 0; n < frames; ++n) {
    const double t = get<double>(in);
    std::vector<double> values(grid->size());
    in.read(reinterpret_cast<char*>(values.data()), static_cast<std::streamsize>(values.size() * sizeof(double)));
    if (!in) throw Error("checkpoint: truncated frame");
    series.push_back(ScalarField(grid, std::move(values), t));
  }
  return series;
}

TimeSeries load_checkpoint(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("checkpoint: cannot open " + path.string());
  return load_checkpoint(in);
}

}  // namespace anisodnl
