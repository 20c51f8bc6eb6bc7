/*
 *  Copyright (C) 2026 The qahybrid authors
 *  This file is part of qahybrid - hybrid quantum/classical accelerometer estimation
 *
 *  SPDX-License-Identifier: Apache-2.0
 *  See the file LICENSE.txt for more information.
 */

#include "qahybrid/io.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <chrono>
#include <cmath>

using namespace qahybrid;

namespace
{
constexpr int kStreamColumns = 7;

std::string_view Trim(std::string_view s)
{
  while (!s.empty() && (s.back() == '\r' || s.back() == ' ' || s.back() == '\t'))
    s.remove_suffix(1);
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t'))
    s.remove_prefix(1);
  return s;
}
} // namespace

std::string qahybrid::FormatValue(double v)
{
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

void qahybrid::WriteStreamCsv(const std::filesystem::path& path, const SensorStream& s)
{
  std::ofstream out(path);
  if (!out)
    throw IoError("cannot write '" + path.string() + "'");
  out << kStreamHeader << '\n';
  for (Eigen::Index i = 0; i < s.Size(); ++i)
  {
    out << FormatValue(s.t[i]) << ',' << FormatValue(s.ax[i]) << ',' << FormatValue(s.ay[i]) << ','
        << FormatValue(s.az[i]) << ',' << FormatValue(s.wx[i]) << ',' << FormatValue(s.wy[i]) << ','
        << FormatValue(s.wz[i]) << '\n';
  }
  if (!out)
    throw IoError("write failed for '" + path.string() + "'");
}

SensorStream qahybrid::IngestImuCsv(const std::filesystem::path& path, IngestReport* report)
{
  const auto start = std::chrono::steady_clock::now();
  std::ifstream in(path);
  if (!in)
    throw IoError("cannot open '" + path.string() + "'");

  std::string line;
  if (!std::getline(in, line) || Trim(line) != kStreamHeader)
    throw IoError("schema mismatch: expected header '" + std::string(kStreamHeader) + "'");

  std::vector<std::array<double, kStreamColumns>> rows;
  long lineNo = 1;
  while (std::getline(in, line))
  {
    ++lineNo;
    std::string_view rest = Trim(line);
    if (rest.empty())
      continue;
    std::array<double, kStreamColumns> row{};
    int col = 0;
    while (true)
    {
      const auto comma = rest.find(',');
      const std::string_view cell = Trim(rest.substr(0, comma));
      if (col >= kStreamColumns)
        throw IoError("schema mismatch at line " + std::to_string(lineNo) + ": too many columns");
      double v = 0;
      const auto res = std::from_chars(cell.data(), cell.data() + cell.size(), v);
      if (res.ec != std::errc() || res.ptr != cell.data() + cell.size())
        throw IoError("unparsable cell '" + std::string(cell) + "' at line " + std::to_string(lineNo));
      if (!std::isfinite(v))
        throw IoError("non-finite cell at line " + std::to_string(lineNo));
      row[static_cast<std::size_t>(col++)] = v;
      if (comma == std::string_view::npos)
        break;
      rest = rest.substr(comma + 1);
    }
    if (col != kStreamColumns)
      throw IoError("schema mismatch at line " + std::to_string(lineNo) + ": expected 7 columns");
    if (!rows.empty() && !(row[0] > rows.back()[0]))
      throw IoError("time not increasing at t=" + FormatValue(row[0]));
    rows.push_back(row);
  }
  if (rows.size() < 2)
    throw IoError("stream needs at least two samples");

  std::vector<double> dt(rows.size() - 1);
  for (std::size_t i = 1; i < rows.size(); ++i)
    dt[i - 1] = rows[i][0] - rows[i - 1][0];
  std::vector<double> sorted = dt;
  std::nth_element(sorted.begin(), sorted.begin() + static_cast<long>(sorted.size() / 2), sorted.end());
  const double period = sorted[sorted.size() / 2];
  for (std::size_t i = 0; i < dt.size(); ++i)
  {
    if (dt[i] > 2 * period)
      throw IoError("gap of " + FormatValue(dt[i]) + " s after t=" + FormatValue(rows[i][0]));
  }

  SensorStream s;
  s.rate = 1.0 / period;
  s.Resize(static_cast<Eigen::Index>(rows.size()));
  for (std::size_t i = 0; i < rows.size(); ++i)
  {
    const auto k = static_cast<Eigen::Index>(i);
    s.t[k] = rows[i][0];
    s.ax[k] = rows[i][1];
    s.ay[k] = rows[i][2];
    s.az[k] = rows[i][3];
    s.wx[k] = rows[i][4];
    s.wy[k] = rows[i][5];
    s.wz[k] = rows[i][6];
  }
  if (report)
  {
    report->rows = static_cast<long>(rows.size());
    report->seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
  return s;
}

CsvWriter::CsvWriter(const std::filesystem::path& path, const std::vector<std::string>& header)
  : m_out(path), m_columns(header.size())
{
  if (!m_out)
    throw IoError("cannot write '" + path.string() + "'");
  for (std::size_t i = 0; i < header.size(); ++i)
    m_out << (i ? "," : "") << header[i];
  m_out << '\n';
}

void CsvWriter::Separator()
{
  if (m_current >= m_columns)
    throw IoError("too many CSV cells in row");
  if (m_current++ > 0)
    m_out << ',';
}

CsvWriter& CsvWriter::operator<<(double v)
{
  Separator();
  if (std::isnan(v))
    m_out << "nan";
  else if (std::isinf(v))
    m_out << (v > 0 ? "inf" : "-inf");
  else
    m_out << FormatValue(v);
  return *this;
}

CsvWriter& CsvWriter::operator<<(long v)
{
  Separator();
  m_out << v;
  return *this;
}

CsvWriter& CsvWriter::operator<<(const std::string& v)
{
  Separator();
  m_out << v;
  return *this;
}

void CsvWriter::EndRow()
{
  if (m_current != m_columns)
    throw IoError("CSV row has " + std::to_string(m_current) + " of " + std::to_string(m_columns) + " cells");
  m_out << '\n';
  m_current = 0;
}

void qahybrid::WriteAllanCsv(const std::filesystem::path& path, const AllanCurve& curve)
{
  CsvWriter w(path, {"tau", "sigma", "n"});
  for (std::size_t i = 0; i < curve.taus.size(); ++i)
  {
    w << curve.taus[i] << curve.sigma[i] << static_cast<long>(curve.counts[i]);
    w.EndRow();
  }
}
