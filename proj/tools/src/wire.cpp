#include "psdfactor/cli/wire.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <limits>

namespace psdfactor::cli {

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw Error(ErrorCode::ParseError, "at " + (path.empty() ? std::string("/") : path) + ": " + what);
}

std::string child(const std::string& path, const std::string& key) { return path + "/" + key; }
std::string child(const std::string& path, std::size_t i) { return path + "/" + std::to_string(i); }

Index index_from_json(const Json& j, const std::string& path) {
  if (!j.is_number_integer() || j.get<std::int64_t>() < 0) fail(path, "expected a nonnegative integer");
  return static_cast<Index>(j.get<std::int64_t>());
}

std::string format_double(double v) {
  if (v == 0.0 && std::signbit(v)) return "-0.0";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write(const Json& j, std::string& out, int depth, bool pretty) {
  const std::string pad = pretty ? std::string(static_cast<std::size_t>(2 * (depth + 1)), ' ') : "";
  const std::string close_pad = pretty ? std::string(static_cast<std::size_t>(2 * depth), ' ') : "";
  const std::string nl = pretty ? "\n" : "";
  const std::string sep = pretty ? ", " : ",";
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{" + nl;
      bool first = true;
      for (const auto& [key, value] : j.items()) {
        if (!first) out += "," + nl;
        first = false;
        out += pad + Json(key).dump() + (pretty ? ": " : ":");
        write(value, out, depth + 1, pretty);
      }
      out += nl + close_pad + "}";
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      // Short numeric arrays (complex pairs) stay on one line.
      const bool inline_pair = j.size() <= 2 && std::all_of(j.begin(), j.end(), [](const Json& e) {
                                 return e.is_number() || e.is_string();
                               });
      if (inline_pair) {
        out += "[";
        for (std::size_t i = 0; i < j.size(); ++i) {
          if (i) out += sep;
          write(j[i], out, depth + 1, pretty);
        }
        out += "]";
        return;
      }
      out += "[" + nl;
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) out += "," + nl;
        out += pad;
        write(j[i], out, depth + 1, pretty);
      }
      out += nl + close_pad + "]";
      return;
    }
    case Json::value_t::number_float: {
      const double v = j.get<double>();
      out += std::isfinite(v) ? format_double(v) : "null";
      return;
    }
    default:
      out += j.dump();
  }
}

}  // namespace

Json parse_document(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
}

std::string write_json(const Json& j, bool pretty) {
  std::string out;
  write(j, out, 0, pretty);
  if (pretty) out += "\n";
  return out;
}

Json number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

double number_from_json(const Json& j, const std::string& path) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const auto& s = j.get_ref<const std::string&>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  }
  fail(path, "expected a number");
}

Json claim(double value, double tol) { return Json{{"value", number(value)}, {"tol", tol}}; }

const Json& field(const Json& obj, const std::string& key, const std::string& path) {
  if (!obj.is_object()) fail(path, "expected an object");
  const auto it = obj.find(key);
  if (it == obj.end()) fail(child(path, key), "missing field");
  return *it;
}

Json to_json(Complex z) { return Json::array({number(z.real()), number(z.imag())}); }

Complex complex_from_json(const Json& j, const std::string& path) {
  if (!j.is_array() || j.size() != 2) fail(path, "expected a [re, im] pair");
  return {number_from_json(j[0], child(path, std::size_t{0})), number_from_json(j[1], child(path, std::size_t{1}))};
}

Json to_json(const CMatrix& m) {
  Json data = Json::array();
  for (Index i = 0; i < m.rows(); ++i)
    for (Index k = 0; k < m.cols(); ++k) data.push_back(to_json(m(i, k)));
  return Json{{"rows", m.rows()}, {"cols", m.cols()}, {"data", std::move(data)}};
}

CMatrix matrix_from_json(const Json& j, const std::string& path) {
  const Index rows = index_from_json(field(j, "rows", path), child(path, "rows"));
  const Index cols = index_from_json(field(j, "cols", path), child(path, "cols"));
  const Json& data = field(j, "data", path);
  const std::string data_path = child(path, "data");
  if (!data.is_array()) fail(data_path, "expected an array");
  if (data.size() != static_cast<std::size_t>(rows * cols))
    fail(data_path, "expected " + std::to_string(rows * cols) + " entries, found " + std::to_string(data.size()));
  CMatrix m(rows, cols);
  std::size_t e = 0;
  for (Index i = 0; i < rows; ++i)
    for (Index k = 0; k < cols; ++k, ++e) m(i, k) = complex_from_json(data[e], child(data_path, e));
  return m;
}

Json to_json(const Subspace& s) {
  return Json{{"ambient", s.ambient_dim()}, {"dim", s.dim()}, {"basis", to_json(s.basis())}};
}

Json to_json(const LinRel& r) {
  return Json{{"n", r.dom_dim()}, {"m", r.codom_dim()}, {"graph_basis", to_json(r.graph().basis())}};
}

bool is_relation_payload(const Json& j) { return j.is_object() && j.contains("graph_basis"); }

LinRel relation_from_json(const Json& j, const std::string& path) {
  const Index n = index_from_json(field(j, "n", path), child(path, "n"));
  const Index m = index_from_json(field(j, "m", path), child(path, "m"));
  const std::string basis_path = child(path, "graph_basis");
  const CMatrix basis = matrix_from_json(field(j, "graph_basis", path), basis_path);
  if (basis.rows() != n + m)
    fail(basis_path, "graph basis has " + std::to_string(basis.rows()) + " rows, expected n + m = " +
                         std::to_string(n + m));
  const double drift =
      basis.cols() == 0 ? 0.0 : (basis.adjoint() * basis - identity(basis.cols())).norm();
  if (drift <= kSubspaceTol) return LinRel(n, m, Subspace(n + m, basis));
  return LinRel::span(basis.topRows(n), basis.bottomRows(m));
}

Json to_json(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

Rational rational_from_json(const Json& j, const std::string& path) {
  if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
  if (!j.is_string()) fail(path, "expected a rational \"p/q\"");
  const auto& s = j.get_ref<const std::string&>();
  const auto slash = s.find('/');
  auto parse_int = [&](std::string_view part) {
    std::int64_t v = 0;
    const auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), v);
    if (ec != std::errc() || ptr != part.data() + part.size() || part.empty())
      fail(path, "malformed rational \"" + s + "\"");
    return v;
  };
  const std::string_view view(s);
  const std::int64_t p = parse_int(view.substr(0, slash));
  const std::int64_t q = slash == std::string::npos ? 1 : parse_int(view.substr(slash + 1));
  if (q <= 0) fail(path, "rational denominator must be positive");
  return Rational(p, q);
}

Json to_json(const DiagValue& v) {
  switch (v.kind) {
    case DiagValue::Kind::Finite:
      return to_json(v.value);
    case DiagValue::Kind::Infinite:
      return "inf";
    case DiagValue::Kind::Null:
      return "null";
    case DiagValue::Kind::Full:
      return "full";
  }
  return nullptr;
}

DiagValue value_from_json(const Json& j, const std::string& path) {
  if (j.is_string()) {
    const auto& s = j.get_ref<const std::string&>();
    if (s == "inf") return DiagValue::infinite();
    if (s == "null") return DiagValue::null();
    if (s == "full") return DiagValue::full();
    fail(path, "unknown entry \"" + s + "\"");
  }
  return DiagValue::finite(complex_from_json(j, path));
}

Json to_json(const DiagSymbol& d) {
  Json head = Json::array();
  for (const auto& v : d.head) head.push_back(to_json(v));
  return Json{{"head", std::move(head)},
              {"tail", Json{{"coeff", to_json(d.tail_coeff)}, {"power", to_json(d.tail_power)}}}};
}

DiagSymbol symbol_from_json(const Json& j, const std::string& path) {
  if (j.is_string()) {
    try {
      return diag_named(j.get<std::string>());
    } catch (const Error& e) {
      fail(path, e.what());
    }
  }
  DiagSymbol d;
  const Json& head = field(j, "head", path);
  const std::string head_path = child(path, "head");
  if (!head.is_array()) fail(head_path, "expected an array");
  for (std::size_t i = 0; i < head.size(); ++i) d.head.push_back(value_from_json(head[i], child(head_path, i)));
  if (j.contains("tail")) {
    const std::string tail_path = child(path, "tail");
    const Json& tail = j["tail"];
    d.tail_coeff = complex_from_json(field(tail, "coeff", tail_path), child(tail_path, "coeff"));
    d.tail_power = rational_from_json(field(tail, "power", tail_path), child(tail_path, "power"));
  }
  return d;
}

Json to_json(const CheckList& checks) {
  Json out = Json::array();
  for (const auto& c : checks)
    out.push_back(Json{{"name", c.name}, {"value", number(c.value)}, {"tol", c.tol}, {"pass", c.pass}});
  return out;
}

}  // namespace psdfactor::cli
