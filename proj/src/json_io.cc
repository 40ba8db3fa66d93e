#include "trigfactor/json_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "trigfactor/errors.hpp"

namespace trigfactor {
namespace {

Json real_rows(const Matrix& m, bool imag) {
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      row.push_back(imag ? m(r, c).imag() : m(r, c).real());
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

const Json& field(const Json& j, const char* name, const std::string& where) {
  if (!j.is_object() || !j.contains(name)) {
    throw FormatError("missing field '" + where + name + "'");
  }
  return j.at(name);
}

int int_at(const Json& j, size_t i, const std::string& where) {
  if (!j.is_array() || i >= j.size() || !j[i].is_number_integer()) {
    throw FormatError("field '" + where + "' must be an array of integers");
  }
  return j[i].get<int>();
}

Matrix read_matrix(const Json& coeff, int rows, int cols, const std::string& where) {
  Matrix m = Matrix::Zero(rows, cols);
  for (const char* part : {"re", "im"}) {
    if (!coeff.contains(part)) {
      if (std::string(part) == "im") continue;
      throw FormatError("missing field '" + where + part + "'");
    }
    const Json& a = coeff.at(part);
    const std::string name = where + part;
    if (!a.is_array() || static_cast<int>(a.size()) != rows) {
      throw FormatError("field '" + name + "' must have " + std::to_string(rows) + " rows");
    }
    for (int r = 0; r < rows; ++r) {
      if (!a[r].is_array() || static_cast<int>(a[r].size()) != cols) {
        throw FormatError("field '" + name + "' row " + std::to_string(r) + " must have " +
                          std::to_string(cols) + " entries");
      }
      for (int c = 0; c < cols; ++c) {
        if (!a[r][c].is_number()) {
          throw FormatError("field '" + name + "' has a non-numeric entry");
        }
        const double v = a[r][c].get<double>();
        if (std::string(part) == "re") {
          m(r, c) = Complex(v, m(r, c).imag());
        } else {
          m(r, c) = Complex(m(r, c).real(), v);
        }
      }
    }
  }
  return m;
}

struct Header {
  int vars = 0;
  int rows = 0;
  int cols = 0;
  int d1 = 0;
  int d2 = 0;
  bool hermitian = false;
  bool analytic = false;
};

Header read_header(const Json& j) {
  if (!j.is_object()) throw FormatError("polynomial must be a JSON object");
  Header h;
  const Json& vars = field(j, "vars", "");
  if (!vars.is_number_integer() || (vars.get<int>() != 1 && vars.get<int>() != 2)) {
    throw FormatError("field 'vars' must be 1 or 2");
  }
  h.vars = vars.get<int>();
  const Json& dim = field(j, "dim", "");
  h.rows = int_at(dim, 0, "dim");
  h.cols = int_at(dim, 1, "dim");
  if (dim.size() != 2 || h.rows < 1 || h.cols < 1) {
    throw FormatError("field 'dim' must be [rows, cols] with positive entries");
  }
  const Json& degree = field(j, "degree", "");
  if (!degree.is_array() || static_cast<int>(degree.size()) != h.vars) {
    throw FormatError("field 'degree' must have " + std::to_string(h.vars) + " entries");
  }
  h.d1 = int_at(degree, 0, "degree");
  if (h.vars == 2) h.d2 = int_at(degree, 1, "degree");
  if (h.d1 < 0 || h.d2 < 0) throw FormatError("field 'degree' must be non-negative");
  if (j.contains("flags")) {
    const Json& flags = j.at("flags");
    if (!flags.is_object()) throw FormatError("field 'flags' must be an object");
    for (const char* name : {"hermitian", "analytic"}) {
      if (!flags.contains(name)) continue;
      if (!flags.at(name).is_boolean()) {
        throw FormatError(std::string("field 'flags.") + name + "' must be a boolean");
      }
    }
    h.hermitian = flags.value("hermitian", false);
    h.analytic = flags.value("analytic", false);
  }
  if (h.hermitian && h.analytic) {
    throw FormatError("field 'flags': hermitian and analytic are exclusive");
  }
  return h;
}

bool in_box(int n, const Header& h) { return std::abs(n) <= h.d1; }
bool in_box(const Index2& n, const Header& h) {
  return std::abs(n.first) <= h.d1 && std::abs(n.second) <= h.d2;
}

template <typename Key, typename ReadKey>
std::map<Key, Matrix> read_coeffs(const Json& j, const Header& h, ReadKey read_key) {
  const Json& list = field(j, "coeffs", "");
  if (!list.is_array()) throw FormatError("field 'coeffs' must be an array");
  std::map<Key, Matrix> out;
  for (size_t i = 0; i < list.size(); ++i) {
    const std::string where = "coeffs[" + std::to_string(i) + "].";
    const Json& c = list[i];
    if (!c.is_object()) throw FormatError("field 'coeffs[" + std::to_string(i) + "]' must be an object");
    Key key = read_key(field(c, "k", where), where + "k");
    if (out.count(key) != 0) throw FormatError("field '" + where + "k' repeats a degree");
    if (!in_box(key, h)) throw FormatError("field '" + where + "k' lies outside 'degree'");
    out[key] = read_matrix(c, h.rows, h.cols, where);
  }
  return out;
}

template <typename Poly>
Poly construct(const Header& h, auto coeffs, auto degree, const std::string& label) {
  try {
    if (h.hermitian) {
      if (h.rows != h.cols) throw FormatError("field 'dim': hermitian polynomial must be square");
      return Poly::Hermitian(h.rows, degree, std::move(coeffs));
    }
    if (h.analytic) return Poly::Analytic(h.rows, h.cols, degree, std::move(coeffs));
    return Poly::General(h.rows, h.cols, degree, std::move(coeffs));
  } catch (const ShapeError& e) {
    throw FormatError("field '" + label + "': " + e.what());
  }
}

}  // namespace

Json matrix_to_json(const Matrix& m) {
  return Json{{"re", real_rows(m, false)}, {"im", real_rows(m, true)}};
}

Json to_json(const MatrixPoly1& p) {
  Json coeffs = Json::array();
  for (const auto& [n, c] : p.coeffs()) {
    Json e = matrix_to_json(c);
    e["k"] = Json::array({n});
    coeffs.push_back(std::move(e));
  }
  return Json{{"vars", 1},
              {"dim", {p.rows(), p.cols()}},
              {"degree", {p.degree()}},
              {"coeffs", std::move(coeffs)},
              {"flags", {{"hermitian", p.is_hermitian()}, {"analytic", p.is_analytic()}}}};
}

Json to_json(const MatrixPoly2& p) {
  Json coeffs = Json::array();
  for (const auto& [n, c] : p.coeffs()) {
    Json e = matrix_to_json(c);
    e["k"] = Json::array({n.first, n.second});
    coeffs.push_back(std::move(e));
  }
  return Json{{"vars", 2},
              {"dim", {p.rows(), p.cols()}},
              {"degree", {p.degree().first, p.degree().second}},
              {"coeffs", std::move(coeffs)},
              {"flags", {{"hermitian", p.is_hermitian()}, {"analytic", p.is_analytic()}}}};
}

MatrixPoly1 poly1_from_json(const Json& j) {
  Header h = read_header(j);
  if (h.vars != 1) throw FormatError("field 'vars' must be 1");
  auto coeffs = read_coeffs<int>(j, h, [](const Json& k, const std::string& where) {
    if (!k.is_array() || k.size() != 1) throw FormatError("field '" + where + "' must be [k1]");
    return int_at(k, 0, where);
  });
  return construct<MatrixPoly1>(h, std::move(coeffs), h.d1, "coeffs");
}

MatrixPoly2 poly2_from_json(const Json& j) {
  Header h = read_header(j);
  if (h.vars != 2) throw FormatError("field 'vars' must be 2");
  auto coeffs = read_coeffs<Index2>(j, h, [](const Json& k, const std::string& where) {
    if (!k.is_array() || k.size() != 2) {
      throw FormatError("field '" + where + "' must be [k1, k2]");
    }
    return Index2{int_at(k, 0, where), int_at(k, 1, where)};
  });
  return construct<MatrixPoly2>(h, std::move(coeffs), Index2{h.d1, h.d2}, "coeffs");
}

AnyPoly poly_from_json(const Json& j) {
  Header h = read_header(j);
  if (h.vars == 1) return poly1_from_json(j);
  return poly2_from_json(j);
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw FormatError("'" + path + "' is not valid JSON: " + e.what());
  }
}

void write_text_atomic(const std::string& path, const std::string& text) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw FormatError("cannot write '" + tmp + "'");
    out << text;
    out.flush();
    if (!out) throw FormatError("write to '" + tmp + "' failed");
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) {
    std::remove(tmp.c_str());
    throw FormatError("cannot rename '" + tmp + "' to '" + path + "'");
  }
}

std::string dump_json(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace trigfactor
