// Copyright 2026 The qmarkov Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "qmc/param_family.hpp"

namespace qmc::io {

using Json = nlohmann::json;
using Report = nlohmann::ordered_json;

/// Unreadable file or document that does not match the schema. `field` is a
/// JSON-pointer-like path to the offending entry.
class InputError : public std::runtime_error {
 public:
  InputError(std::string file, std::string field, const std::string& message)
      : std::runtime_error(file + (field.empty() ? "" : " at " + field) + ": " + message),
        file_(std::move(file)),
        field_(std::move(field)) {}
  const std::string& file() const { return file_; }
  const std::string& field() const { return field_; }

 private:
  std::string file_;
  std::string field_;
};

inline Json read_document(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError(path, "", "cannot open file");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw InputError(path, "", std::string("malformed document: ") + e.what());
  }
}

// ---------------------------------------------------------------------------
// Schema helpers

class Reader {
 public:
  explicit Reader(std::string file) : file_(std::move(file)) {}

  [[noreturn]] void fail(const std::string& field, const std::string& message) const {
    throw InputError(file_, field, message);
  }

  const Json& field(const Json& obj, const std::string& path, const char* key) const {
    if (!obj.is_object()) fail(path, "expected an object");
    auto it = obj.find(key);
    if (it == obj.end()) fail(path + "/" + key, "missing required field");
    return *it;
  }

  long integer(const Json& j, const std::string& path) const {
    if (!j.is_number_integer()) fail(path, "expected an integer");
    return j.get<long>();
  }

  double real(const Json& j, const std::string& path) const {
    if (!j.is_number()) fail(path, "expected a number");
    return j.get<double>();
  }

  Complex complex(const Json& j, const std::string& path) const {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
      fail(path, "expected a complex number [re, im]");
    return {j[0].get<double>(), j[1].get<double>()};
  }

  Vector vector(const Json& j, const std::string& path) const {
    if (!j.is_array() || j.empty()) fail(path, "expected a non-empty list of [re, im] pairs");
    Vector v(static_cast<Eigen::Index>(j.size()));
    for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Eigen::Index>(i)) = complex(j[i], path + "/" + std::to_string(i));
    return v;
  }

  /// Row-major matrix: a list of rows, each a list of [re, im] pairs.
  Matrix matrix(const Json& j, const std::string& path, Eigen::Index rows, Eigen::Index cols) const {
    if (!j.is_array() || static_cast<Eigen::Index>(j.size()) != rows)
      fail(path, "expected " + std::to_string(rows) + " rows");
    Matrix m(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r) {
      const Json& row = j[static_cast<std::size_t>(r)];
      const std::string rp = path + "/" + std::to_string(r);
      if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols)
        fail(rp, "expected " + std::to_string(cols) + " entries");
      for (Eigen::Index c = 0; c < cols; ++c)
        m(r, c) = complex(row[static_cast<std::size_t>(c)], rp + "/" + std::to_string(c));
    }
    return m;
  }

  /// Square matrix whose size is taken from the document.
  Matrix square_matrix(const Json& j, const std::string& path) const {
    if (!j.is_array() || j.empty()) fail(path, "expected a non-empty list of rows");
    const auto n = static_cast<Eigen::Index>(j.size());
    return matrix(j, path, n, n);
  }

  std::vector<Matrix> matrix_list(const Json& j, const std::string& path, Eigen::Index count, Eigen::Index dim) const {
    if (!j.is_array() || static_cast<Eigen::Index>(j.size()) != count)
      fail(path, "expected a list of " + std::to_string(count) + " matrices");
    std::vector<Matrix> out;
    for (Eigen::Index i = 0; i < count; ++i)
      out.push_back(matrix(j[static_cast<std::size_t>(i)], path + "/" + std::to_string(i), dim, dim));
    return out;
  }

 private:
  std::string file_;
};

struct FamilyDocument {
  std::vector<Matrix> kraus;
  std::optional<std::vector<Matrix>> dkraus;
  std::optional<std::vector<Matrix>> ddkraus;
  std::optional<std::string> generator_type;
  std::optional<Matrix> generator;
  std::optional<Vector> phi;
};

/// Kraus document:
///   dim_system, dim_noise: integers
///   kraus: dim_noise matrices of size dim_system
///   dkraus, ddkraus (optional): derivative matrices, same shape
///   generator (optional): {type: "hamiltonian" | "conjugation", matrix}
///   phi (optional): initial system vector
inline FamilyDocument parse_family(const Json& doc, const std::string& file) {
  const Reader r(file);
  if (!doc.is_object()) r.fail("", "expected an object at the document root");
  const long d = r.integer(r.field(doc, "", "dim_system"), "/dim_system");
  const long k = r.integer(r.field(doc, "", "dim_noise"), "/dim_noise");
  if (d < 1) r.fail("/dim_system", "must be positive");
  if (k < 1) r.fail("/dim_noise", "must be positive");
  FamilyDocument out;
  out.kraus = r.matrix_list(r.field(doc, "", "kraus"), "/kraus", k, d);
  if (doc.contains("dkraus") != doc.contains("ddkraus"))
    r.fail(doc.contains("dkraus") ? "/ddkraus" : "/dkraus", "dkraus and ddkraus must be given together");
  if (doc.contains("dkraus")) {
    out.dkraus = r.matrix_list(doc["dkraus"], "/dkraus", k, d);
    out.ddkraus = r.matrix_list(doc["ddkraus"], "/ddkraus", k, d);
  }
  if (doc.contains("generator")) {
    if (out.dkraus) r.fail("/generator", "give either a generator or dkraus/ddkraus, not both");
    const Json& g = doc["generator"];
    const Json& type = r.field(g, "/generator", "type");
    if (!type.is_string() || (type != "hamiltonian" && type != "conjugation"))
      r.fail("/generator/type", "expected \"hamiltonian\" or \"conjugation\"");
    out.generator_type = type.get<std::string>();
    const long gd = *out.generator_type == "hamiltonian" ? d * k : d;
    out.generator = r.matrix(r.field(g, "/generator", "matrix"), "/generator/matrix", gd, gd);
  }
  if (doc.contains("phi")) {
    out.phi = r.vector(doc["phi"], "/phi");
    if (out.phi->size() != d) r.fail("/phi", "expected " + std::to_string(d) + " entries");
  }
  return out;
}

inline FamilyDocument load_family_document(const std::string& path) { return parse_family(read_document(path), path); }

inline KrausFamily load_kraus(const std::string& path, const Options& opt = {}) {
  return KrausFamily::validate(load_family_document(path).kraus, opt);
}

inline ParamFamily to_param_family(const FamilyDocument& doc, const std::string& path, const Options& opt = {}) {
  const KrausFamily base = KrausFamily::validate(doc.kraus, opt);
  if (doc.generator_type == std::optional<std::string>("hamiltonian"))
    return ParamFamily::make_hamiltonian(base, *doc.generator, opt);
  if (doc.generator_type == std::optional<std::string>("conjugation"))
    return ParamFamily::make_conjugation(base, *doc.generator, opt);
  if (!doc.dkraus) throw InputError(path, "/generator", "a parametrised family needs a generator or dkraus/ddkraus");
  return ParamFamily::make_explicit(base, *doc.dkraus, *doc.ddkraus, opt);
}

/// Observable document: {matrix} with a square matrix of [re, im] pairs.
inline Matrix load_observable(const std::string& path) {
  const Json doc = read_document(path);
  const Reader r(path);
  return r.square_matrix(r.field(doc, "", "matrix"), "/matrix");
}

// ---------------------------------------------------------------------------
// Report encoding

inline Report to_json(Complex z) { return Report::array({z.real(), z.imag()}); }

inline Report to_json(const Matrix& m) {
  Report rows = Report::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Report row = Report::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(to_json(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline Report to_json(const Vector& v) {
  Report out = Report::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(to_json(v(i)));
  return out;
}

inline Report to_json(const std::vector<Complex>& v) {
  Report out = Report::array();
  for (const Complex& z : v) out.push_back(to_json(z));
  return out;
}

inline std::string format_double(double x) {
  if (!std::isfinite(x)) return "null";
  if (x == 0.0) x = 0.0;  // drop the sign of negative zero
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

namespace detail {

inline void write_json(std::ostream& out, const Report& j, int indent) {
  const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
  const std::string inner(static_cast<std::size_t>(indent + 1) * 2, ' ');
  switch (j.type()) {
    case Report::value_t::object: {
      if (j.empty()) {
        out << "{}";
        return;
      }
      out << "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out << ",\n";
        first = false;
        out << inner << Report(it.key()).dump() << ": ";
        write_json(out, it.value(), indent + 1);
      }
      out << "\n" << pad << "}";
      return;
    }
    case Report::value_t::array: {
      // Arrays of scalars stay on one line.
      bool flat = true;
      for (const auto& e : j) flat = flat && !e.is_object() && !(e.is_array() && !e.empty() && e[0].is_array());
      if (j.empty()) {
        out << "[]";
        return;
      }
      if (flat) {
        out << "[";
        for (std::size_t i = 0; i < j.size(); ++i) {
          if (i) out << ", ";
          write_json(out, j[i], indent + 1);
        }
        out << "]";
        return;
      }
      out << "[\n";
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) out << ",\n";
        out << inner;
        write_json(out, j[i], indent + 1);
      }
      out << "\n" << pad << "]";
      return;
    }
    case Report::value_t::number_float:
      out << format_double(j.get<double>());
      return;
    default:
      out << j.dump();
      return;
  }
}

}  // namespace detail

/// Deterministic text form: insertion-ordered keys, 17 significant digits.
inline std::string dump_report(const Report& j) {
  std::ostringstream out;
  detail::write_json(out, j, 0);
  out << "\n";
  return out.str();
}

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

inline std::string dump_csv(const CsvTable& t) {
  std::ostringstream out;
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) out << (i ? "," : "") << cells[i];
    out << "\n";
  };
  line(t.header);
  for (const auto& r : t.rows) line(r);
  return out.str();
}

/// Little-endian float64 pairs (re, im) for each amplitude.
inline void write_sidecar(const std::string& path, const Vector& v) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError(path, "", "cannot open sidecar for writing");
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    for (double x : {v(i).real(), v(i).imag()}) {
      std::uint64_t bits;
      std::memcpy(&bits, &x, sizeof bits);
      unsigned char bytes[8];
      for (int b = 0; b < 8; ++b) bytes[b] = static_cast<unsigned char>(bits >> (8 * b));
      out.write(reinterpret_cast<const char*>(bytes), 8);
    }
  }
  if (!out) throw InputError(path, "", "write failed");
}

inline Vector read_sidecar(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError(path, "", "cannot open sidecar");
  std::vector<double> values;
  unsigned char bytes[8];
  while (in.read(reinterpret_cast<char*>(bytes), 8)) {
    std::uint64_t bits = 0;
    for (int b = 0; b < 8; ++b) bits |= static_cast<std::uint64_t>(bytes[b]) << (8 * b);
    double x;
    std::memcpy(&x, &bits, sizeof x);
    values.push_back(x);
  }
  if (values.size() % 2) throw InputError(path, "", "odd number of float64 values");
  Vector v(static_cast<Eigen::Index>(values.size() / 2));
  for (Eigen::Index i = 0; i < v.size(); ++i)
    v(i) = {values[static_cast<std::size_t>(2 * i)], values[static_cast<std::size_t>(2 * i + 1)]};
  return v;
}

}  // namespace qmc::io
