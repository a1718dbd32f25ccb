#include "qgdd/params.hpp"

#include <algorithm>
#include <iomanip>
#include <sstream>

#include "qgdd/gdd.hpp"
#include "qgdd/grassmann.hpp"

namespace qgdd {

namespace {

BigInt gb(unsigned v, int m, unsigned q) { return gaussian_binomial(v, m, q); }

// [v 2] - [g 2][v 1]/[g 1]: lines not inside a spread element.
BigInt uncovered_lines(unsigned q, unsigned v, unsigned g) {
  return gb(v, 2, q) - gb(g, 2, q) * gb(v, 1, q) / gb(g, 1, q);
}

BigInt big_gcd(BigInt a, BigInt b) {
  while (b != 0) {
    BigInt t = a % b;
    a = b;
    b = t;
  }
  return a;
}

BigInt big_lcm(const BigInt& a, const BigInt& b) { return a / big_gcd(a, b) * b; }

bool structural_ok(unsigned v, unsigned g, unsigned k) {
  return g >= 1 && v % g == 0 && k >= 2 && k + g <= v;
}

std::string cell(const std::optional<BigInt>& x) { return x ? to_string(*x) : std::string(); }

std::string json_number(const std::optional<BigInt>& x) { return x ? to_string(*x) : "null"; }

std::string_view source_name(LambdaMaxSource s) {
  switch (s) {
    case LambdaMaxSource::None: return "none";
    case LambdaMaxSource::ClosedForm: return "closed_form";
    case LambdaMaxSource::DesarguesianClosedForm: return "desarguesian_closed_form";
    case LambdaMaxSource::Enumeration: return "enumeration";
  }
  return "none";
}

}  // namespace

std::optional<BigInt> required_block_count(unsigned q, unsigned v, unsigned g, unsigned k,
                                           const BigInt& lambda) {
  if (g == 0 || v % g != 0 || k < 2) return std::nullopt;
  const BigInt num = lambda * uncovered_lines(q, v, g);
  const BigInt den = gb(k, 2, q);
  if (num % den != 0) return std::nullopt;
  return num / den;
}

std::optional<BigInt> required_replication(unsigned q, unsigned v, unsigned g, unsigned k,
                                           const BigInt& lambda) {
  if (g == 0 || v % g != 0 || k < 2) return std::nullopt;
  const BigInt num = lambda * (gb(v - 1, 1, q) - gb(g - 1, 1, q));
  const BigInt den = gb(k - 1, 1, q);
  if (num % den != 0) return std::nullopt;
  return num / den;
}

std::optional<BigInt> group_count(unsigned q, unsigned v, unsigned g) {
  if (g == 0 || v % g != 0) return std::nullopt;
  return gb(v, 1, q) / gb(g, 1, q);
}

ParamReport check_conditions(unsigned q, unsigned v, unsigned g, unsigned k, const BigInt& lambda) {
  ParamReport r;
  r.q = q;
  r.v = v;
  r.g = g;
  r.k = k;
  r.lambda = lambda;
  auto fail = [&](std::string what) { r.failed_conditions.push_back(std::move(what)); };
  if (lambda < 1) fail("lambda < 1");
  if (g == 0 || v % g != 0) fail("g does not divide v");
  if (k < 2) fail("k < 2");
  if (k + g > v) fail("k > v - g");
  r.groups = group_count(q, v, g);
  if (k >= 2 && g >= 1 && v % g == 0) {
    r.block_count = required_block_count(q, v, g, k, lambda);
    r.replication = required_replication(q, v, g, k, lambda);
    if (!r.block_count) fail("block count is not an integer");
    if (!r.replication) fail("replication number is not an integer");
  }
  if (g >= 2 && g <= k && lambda % big_pow(q, k - g) != 0) fail("q^(k-g) does not divide lambda");
  r.admissible = r.failed_conditions.empty();
  r.lambda_delta = lambda_delta(q, v, g, k);
  std::tie(r.lambda_max, r.lambda_max_source) = known_lambda_max(q, v, g, k);
  return r;
}

std::optional<BigInt> lambda_delta(unsigned q, unsigned v, unsigned g, unsigned k) {
  if (!structural_ok(v, g, k)) return std::nullopt;
  const BigInt lines_den = gb(k, 2, q);
  const BigInt rep_den = gb(k - 1, 1, q);
  BigInt d = lines_den / big_gcd(uncovered_lines(q, v, g), lines_den);
  d = big_lcm(d, rep_den / big_gcd(gb(v - 1, 1, q) - gb(g - 1, 1, q), rep_den));
  if (g >= 2 && g <= k) d = big_lcm(d, big_pow(q, k - g));
  return d;
}

std::pair<std::optional<BigInt>, LambdaMaxSource> known_lambda_max(unsigned q, unsigned v, unsigned g,
                                                                   unsigned k) {
  if (!structural_ok(v, g, k)) return {std::nullopt, LambdaMaxSource::None};
  if (k == 3) return {lambda_max_k3(v, g, q), LambdaMaxSource::ClosedForm};
  if (g == 2 && k == 4) return {lambda_max_g2k4(v, q), LambdaMaxSource::DesarguesianClosedForm};
  if (q == 2 && v == 8 && g == 4 && k == 4) return {BigInt(14), LambdaMaxSource::Enumeration};
  if (q == 2 && v == 9 && g == 3 && k == 4) return {BigInt(1680), LambdaMaxSource::Enumeration};
  return {std::nullopt, LambdaMaxSource::None};
}

std::vector<ParamReport> admissible_table(unsigned q, unsigned v_max) {
  std::vector<ParamReport> rows;
  for (unsigned v = 1; v <= v_max; ++v)
    for (unsigned g = 2; g <= v; ++g) {
      if (v % g != 0) continue;
      const unsigned k_hi = std::min(v - g, v / 2);
      for (unsigned k = 3; k <= k_hi; ++k) {
        const auto delta = lambda_delta(q, v, g, k);
        if (!delta) continue;
        ParamReport r = check_conditions(q, v, g, k, *delta);
        rows.push_back(std::move(r));
      }
    }
  return rows;
}

std::string render_table_text(const std::vector<ParamReport>& rows) {
  std::ostringstream out;
  const auto line = [&](auto v, auto g, auto k, auto ld, auto lm, auto b, auto gr) {
    out << std::setw(3) << v << ' ' << std::setw(3) << g << ' ' << std::setw(3) << k << ' '
        << std::setw(8) << ld << ' ' << std::setw(10) << lm << ' ' << std::setw(12) << b << ' '
        << std::setw(6) << gr << '\n';
  };
  line("v", "g", "k", "lambda_D", "lambda_max", "#B", "#G");
  for (const auto& r : rows) {
    std::string lm = cell(r.lambda_max);
    if (r.lambda_max && r.lambda_max_source != LambdaMaxSource::ClosedForm) lm += '*';
    line(r.v, r.g, r.k, cell(r.lambda_delta), lm, cell(r.block_count), cell(r.groups));
  }
  out << "* lambda_max from the Desarguesian spread or from enumeration\n";
  return out.str();
}

std::string render_table_csv(const std::vector<ParamReport>& rows) {
  std::ostringstream out;
  out << "q,v,g,k,lambda_delta,lambda_max,lambda_max_source,blocks,groups\n";
  for (const auto& r : rows)
    out << r.q << ',' << r.v << ',' << r.g << ',' << r.k << ',' << cell(r.lambda_delta) << ','
        << cell(r.lambda_max) << ',' << source_name(r.lambda_max_source) << ',' << cell(r.block_count)
        << ',' << cell(r.groups) << '\n';
  return out.str();
}

std::string render_table_json(const std::vector<ParamReport>& rows) {
  std::ostringstream out;
  out << "[";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i];
    out << (i ? ",\n " : "\n ") << "{\"q\":" << r.q << ",\"v\":" << r.v << ",\"g\":" << r.g
        << ",\"k\":" << r.k << ",\"lambda_delta\":" << json_number(r.lambda_delta)
        << ",\"lambda_max\":" << json_number(r.lambda_max) << ",\"lambda_max_source\":\""
        << source_name(r.lambda_max_source) << "\",\"blocks\":" << json_number(r.block_count)
        << ",\"groups\":" << json_number(r.groups) << "}";
  }
  out << (rows.empty() ? "]\n" : "\n]\n");
  return out.str();
}

}  // namespace qgdd
