#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "specdens/accuracy.hpp"
#include "specdens/chebyshev.hpp"
#include "specdens/estimators.hpp"
#include "specdens/kernels.hpp"
#include "specdens/metrics.hpp"
#include "specdens/spectral.hpp"
#include "specdens/truncation.hpp"

namespace specdens {

std::string_view version();

// Text operator format: "dim n", n rows of n entries "re+imj", then an
// optional probe row of n entries. Blank lines and '#' comments are skipped.
struct OperatorFile {
  HermitianOperator op;
  std::optional<ProbeState> psi;
};

Complex parse_complex(std::string_view token);
std::string format_complex(Complex z);
OperatorFile read_operator(std::istream& in);
OperatorFile read_operator_file(const std::filesystem::path& path);
void write_operator(std::ostream& out, const HermitianOperator& op, const ProbeState* psi = nullptr);

// Shortest round-trip decimal form.
std::string format_double(double x);

std::string to_json(const SpectralModel& model);
SpectralModel model_from_json(std::string_view text);
std::string to_json(const KernelSpec& kernel);
KernelSpec kernel_from_json(std::string_view text);
std::string to_json(const AccuracyTarget& target);
std::string to_json(const Budget& budget);
std::string to_json(const TruncationBudget& budget);
std::string to_json(const ChebExpansion& expansion);
std::string to_json(const AccuracyReport& report);
std::string to_json(const ObservableCheck& check);

void write_transform_csv(std::ostream& out, const TransformGrid& grid, std::string_view header = {});
void write_histogram_csv(std::ostream& out, std::span<const double> grid, std::span<const std::uint64_t> counts,
                         std::string_view header = {});
void write_moments_csv(std::ostream& out, std::span<const double> moments, std::string_view header = {});
void write_capture_csv(std::ostream& out, const SigmaAccuracy& accuracy, std::string_view header = {});
void write_scaling_csv(std::ostream& out, std::span<const std::pair<double, double>> points, const ScalingFit& fit,
                       std::string_view header = {});

// Throws IoError when the file cannot be written.
void write_text_file(const std::filesystem::path& path, std::string_view contents);

}  // namespace specdens
