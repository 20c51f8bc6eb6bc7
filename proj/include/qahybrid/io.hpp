/*
 *  Copyright (C) 2026 The qahybrid authors
 *  This file is part of qahybrid - hybrid quantum/classical accelerometer estimation
 *
 *  SPDX-License-Identifier: Apache-2.0
 *  See the file LICENSE.txt for more information.
 */
#pragma once

#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "qahybrid/analysis.hpp"
#include "qahybrid/synth.hpp"

namespace qahybrid
{

class IoError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::string_view kStreamHeader = "t,ax,ay,az,wx,wy,wz";

/// Shortest text that parses back to the same double
std::string FormatValue(double v);

void WriteStreamCsv(const std::filesystem::path& path, const SensorStream& stream);

struct IngestReport
{
  long rows{0};
  double seconds{0}; ///< wall time spent parsing
  double RowsPerSecond() const { return seconds > 0 ? static_cast<double>(rows) / seconds : 0.0; }
};

/*!
 * \brief Reads and validates a stream CSV
 *
 * Rejects a wrong header, short or long rows, unparsable or non-finite cells,
 * non-increasing time and gaps longer than two sample periods. The sample
 * period is the median time step.
 */
SensorStream IngestImuCsv(const std::filesystem::path& path, IngestReport* report = nullptr);

/// Comma-separated writer with a fixed column count
class CsvWriter
{
public:
  CsvWriter(const std::filesystem::path& path, const std::vector<std::string>& header);

  CsvWriter& operator<<(double v);
  CsvWriter& operator<<(long v);
  CsvWriter& operator<<(int v) { return *this << static_cast<long>(v); }
  CsvWriter& operator<<(const std::string& v);
  void EndRow();

private:
  void Separator();

  std::ofstream m_out;
  std::size_t m_columns;
  std::size_t m_current{0};
};

void WriteAllanCsv(const std::filesystem::path& path, const AllanCurve& curve);

} // namespace qahybrid
