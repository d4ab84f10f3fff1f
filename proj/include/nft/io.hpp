// Pulse CSV and spectrum JSON files.
//
// Pulse:    header `t,re_q,im_q`, one row per sample, uniform t.
// Spectrum: {"eigenvalues":[{"re","im"}], "qd":[{"re","im"}],
//            "b":[{"re","im"}]?, "qc":{"lambda":[], "re":[], "im":[]}?,
//            "metadata":{...}?}
// Missing Q_c values (spectral singularities) are written as null.
#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include <json.hpp>

#include "nft/spectra.hpp"

namespace nft {

/// Shortest decimal string that parses back to the same double.
std::string format_double(double x);

struct PulseFile {
  /// Samples re-centred on [-T0, T0].
  SampledPulse pulse;
  /// Centre of the original window; the file holds pulse(t - t_shift).
  double t_shift = 0.0;
};

/// Throws InvalidInput on a malformed or non-uniform file.
PulseFile read_pulse_csv(std::istream& in);
PulseFile read_pulse_csv(const std::filesystem::path& path);

void write_pulse_csv(std::ostream& out, const SampledPulse& pulse, double t_shift = 0.0);
void write_pulse_csv(const std::filesystem::path& path, const SampledPulse& pulse,
                     double t_shift = 0.0);

/// Throws InvalidInput on malformed JSON and DuplicateEigenvalue on coincident eigenvalues.
NonlinearSpectrum read_spectrum_json(std::istream& in);
NonlinearSpectrum read_spectrum_json(const std::filesystem::path& path);

nlohmann::ordered_json spectrum_to_json(const NonlinearSpectrum& spectrum,
                                        const nlohmann::ordered_json& metadata = nullptr);
void write_spectrum_json(std::ostream& out, const NonlinearSpectrum& spectrum,
                         const nlohmann::ordered_json& metadata = nullptr);
void write_spectrum_json(const std::filesystem::path& path, const NonlinearSpectrum& spectrum,
                         const nlohmann::ordered_json& metadata = nullptr);

}  // namespace nft
