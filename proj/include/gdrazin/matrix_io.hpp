#pragma once

#include "gdrazin/gaussian_rational.hpp"
#include "gdrazin/matrix.hpp"

#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace gdrazin {

using GMatrix = Matrix<GaussianRational>;

/// Matrix files are JSON documents
///
///   {"rows":n,"cols":m,"data":[["1","-1/2+3i",...],...]}
///
/// with entries in the canonical text form of GaussianRational. Keys are written
/// in this order and without whitespace, so equal matrices serialize to equal
/// bytes.
inline nlohmann::ordered_json matrix_to_json(const GMatrix &m) {
  nlohmann::ordered_json j;
  j["rows"] = m.rows();
  j["cols"] = m.cols();
  auto data = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    auto row = nlohmann::ordered_json::array();
    for (std::size_t k = 0; k < m.cols(); ++k) row.push_back(m(i, k).to_string());
    data.push_back(std::move(row));
  }
  j["data"] = std::move(data);
  return j;
}

inline std::string format_matrix(const GMatrix &m) { return matrix_to_json(m).dump(); }

/// Size cap for accepted matrices, from DRAZIN_MAX_N (default 16).
inline std::size_t max_dimension() {
  const char *env = std::getenv("DRAZIN_MAX_N");
  if (!env || !*env) return 16;
  char *end = nullptr;
  const unsigned long v = std::strtoul(env, &end, 10);
  if (*end != '\0' || v == 0) throw ParseError("DRAZIN_MAX_N must be a positive integer");
  return v;
}

template <class Json>
GMatrix matrix_from_json(const Json &j, std::size_t max_n = max_dimension()) {
  if (!j.is_object()) throw ParseError("matrix document must be a JSON object");
  for (const char *key : {"rows", "cols", "data"})
    if (!j.contains(key)) throw ParseError(std::string("matrix document is missing \"") + key + "\"");
  if (!j["rows"].is_number_unsigned() || !j["cols"].is_number_unsigned())
    throw ParseError("\"rows\" and \"cols\" must be non-negative integers");
  const auto rows = j["rows"].template get<std::size_t>();
  const auto cols = j["cols"].template get<std::size_t>();
  if (rows == 0 || cols == 0) throw ParseError("matrix dimensions must be positive");
  if (rows > max_n || cols > max_n)
    throw ParseError("matrix " + std::to_string(rows) + "x" + std::to_string(cols) + " exceeds DRAZIN_MAX_N = " +
                     std::to_string(max_n));
  const auto &data = j["data"];
  if (!data.is_array() || data.size() != rows) throw ParseError("\"data\" must hold exactly \"rows\" rows");

  GMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    const auto &row = data[i];
    if (!row.is_array() || row.size() != cols)
      throw ParseError("row " + std::to_string(i) + " must hold exactly \"cols\" entries");
    for (std::size_t k = 0; k < cols; ++k) {
      const auto &e = row[k];
      if (e.is_string()) m(i, k) = GaussianRational::parse(e.template get<std::string>());
      else if (e.is_number_integer()) m(i, k) = GaussianRational(e.template get<long>());
      else throw ParseError("entry (" + std::to_string(i) + "," + std::to_string(k) + ") must be a string");
    }
  }
  return m;
}

inline GMatrix parse_matrix(const std::string &text, std::size_t max_n = max_dimension()) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error &e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  return matrix_from_json(j, max_n);
}

inline std::string read_text_file(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline GMatrix read_matrix_file(const std::filesystem::path &path, std::size_t max_n = max_dimension()) {
  try {
    return parse_matrix(read_text_file(path), max_n);
  } catch (const ParseError &e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

inline void write_text_file(const std::filesystem::path &path, const std::string &text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write " + path.string());
  out << text;
  if (!out) throw Error("cannot write " + path.string());
}

} // namespace gdrazin
