#include "hdrelay/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace hdrelay::io {

using nlohmann::json;

namespace {

Rational entry_to_rational(const json& v, const char* what) {
  if (v.is_string()) return parse_rational(v.get<std::string>());
  if (v.is_number_integer()) return Rational(v.get<long long>());
  if (v.is_number_float()) return rational_from_double(v.get<double>());
  throw std::invalid_argument(std::string(what) + ": entry must be a number or string");
}

json parse_json(const std::string& text, const char* what) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) throw std::invalid_argument(std::string(what) + ": malformed JSON");
  return j;
}

ExponentMatrix<Rational> network_from_json(const json& j) {
  if (!j.is_object() || !j.contains("n_relays") || !j.contains("beta"))
    throw std::invalid_argument("network file: expected {\"n_relays\", \"beta\"}");
  const int n = j.at("n_relays").get<int>();
  if (n < 1) throw std::invalid_argument("network file: n_relays must be >= 1");
  const auto& rows = j.at("beta");
  const size_t side = static_cast<size_t>(n) + 1;
  if (!rows.is_array() || rows.size() != side)
    throw std::invalid_argument("network file: beta must be (N+1) rows");
  std::vector<Rational> beta;
  beta.reserve(side * side);
  for (const auto& row : rows) {
    if (!row.is_array() || row.size() != side)
      throw std::invalid_argument("network file: beta rows must have N+1 entries");
    for (const auto& v : row) beta.push_back(entry_to_rational(v, "network file"));
  }
  return ExponentMatrix<Rational>(n, std::move(beta));
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

}  // namespace

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::invalid_argument("cannot write file: " + path);
  out << content;
}

ExponentMatrix<Rational> parse_network_exact(const std::string& text) {
  return network_from_json(parse_json(text, "network file"));
}

ExponentMatrix<double> parse_network_float(const std::string& text) {
  const auto exact = parse_network_exact(text);
  std::vector<double> data;
  data.reserve(exact.data().size());
  for (const Rational& q : exact.data()) data.push_back(to_double(q));
  return ExponentMatrix<double>(exact.n_relays(), std::move(data));
}

ExponentMatrix<Rational> load_network_exact(const std::string& path) {
  return parse_network_exact(read_text_file(path));
}

ExponentMatrix<double> load_network_float(const std::string& path) {
  return parse_network_float(read_text_file(path));
}

std::string network_to_json(const ExponentMatrix<Rational>& b) {
  json rows = json::array();
  const int side = b.side();
  for (int i = 1; i <= side; ++i) {
    json row = json::array();
    for (int j = 1; j <= side; ++j) row.push_back(rational_to_string(b.beta(i, j)));
    rows.push_back(std::move(row));
  }
  json out{{"n_relays", b.n_relays()}, {"beta", std::move(rows)}};
  return out.dump(2) + "\n";
}

namespace {
template <class T, class Fmt>
std::string matrix_to_csv(const ExponentMatrix<T>& b, Fmt fmt) {
  std::string out;
  const int side = b.side();
  for (int i = 1; i <= side; ++i) {
    for (int j = 1; j <= side; ++j) {
      out += fmt(b.beta(i, j));
      out += (j == side) ? '\n' : ',';
    }
  }
  return out;
}
}  // namespace

std::string network_to_csv(const ExponentMatrix<Rational>& b) {
  return matrix_to_csv(b, [](const Rational& q) { return rational_to_string(q); });
}

std::string network_to_csv(const ExponentMatrix<double>& b) {
  return matrix_to_csv(b, [](double v) { return format_double(v); });
}

TwoRelayParams<double> load_two_relay(const std::string& path) {
  json j = parse_json(read_text_file(path), "two-relay file");
  TwoRelayParams<double> p;
  auto field = [&](const char* name) {
    if (!j.contains(name))
      throw std::invalid_argument(std::string("two-relay file: missing field ") + name);
    return to_double(entry_to_rational(j.at(name), "two-relay file"));
  };
  p.a_s1 = field("a_s1");
  p.a_s2 = field("a_s2");
  p.a_1d = field("a_1d");
  p.a_2d = field("a_2d");
  p.b_1 = field("b_1");
  p.b_2 = field("b_2");
  return p;
}

namespace {
template <class T>
MaskedWeightMatrix<T> weights_from_json(const json& j) {
  if (!j.is_object() || !j.contains("weights"))
    throw std::invalid_argument("weights file: expected {\"weights\": [[...]]}");
  const auto& rows = j.at("weights");
  if (!rows.is_array() || rows.empty())
    throw std::invalid_argument("weights file: weights must be a nonempty matrix");
  const size_t nc = rows.front().size();
  MaskedWeightMatrix<T> m(std::vector<int>(rows.size(), 0), std::vector<int>(nc, 0));
  for (size_t r = 0; r < rows.size(); ++r) {
    const auto& row = rows[r];
    if (!row.is_array() || row.size() != nc)
      throw std::invalid_argument("weights file: ragged matrix");
    for (size_t c = 0; c < nc; ++c) {
      if (row[c].is_null()) continue;
      const Rational q = entry_to_rational(row[c], "weights file");
      if constexpr (scalar_traits<T>::exact)
        m.set(r, c, q);
      else
        m.set(r, c, to_double(q));
    }
  }
  return m;
}
}  // namespace

MaskedWeightMatrix<Rational> load_weights_exact(const std::string& path) {
  return weights_from_json<Rational>(parse_json(read_text_file(path), "weights file"));
}

MaskedWeightMatrix<double> load_weights_float(const std::string& path) {
  return weights_from_json<double>(parse_json(read_text_file(path), "weights file"));
}

namespace {
template <class T, class Fmt>
std::string solution_json_impl(const GdofSolution<T>& sol, Fmt fmt) {
  json lambda = json::array();
  for (const T& l : sol.schedule.lambda) lambda.push_back(fmt(l));
  json out{{"gdof", fmt(sol.d)},
           {"lambda", std::move(lambda)},
           {"support_size", sol.support_size},
           {"tight_cuts", sol.tight_cuts},
           {"mode", sol.solver_mode}};
  return out.dump(2) + "\n";
}
}  // namespace

std::string solution_to_json(const GdofSolution<Rational>& sol) {
  return solution_json_impl(sol, [](const Rational& q) { return rational_to_string(q); });
}

std::string solution_to_json(const GdofSolution<double>& sol) {
  return solution_json_impl(sol, [](double v) { return v; });
}

}  // namespace hdrelay::io
