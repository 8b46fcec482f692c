#include "anisodnl/expression.hpp"

#include <charconv>
#include <cmath>
#include <numbers>
#include <sstream>
#include <vector>

#include "anisodnl/errors.hpp"

namespace anisodnl {
namespace {

struct Term {
  enum class Kind { constant, affine, sine, bubble, tanh_u } kind = Kind::constant;
  std::vector<double> args;
  bool times_t = false;
};

double to_number(const std::string& token) {
  double value = 0.0;
  const char* first = token.data();
  const char* last = first + token.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) throw DomainError("expression: '" + token + "' is not a number");
  return value;
}

std::vector<std::vector<std::string>> split_terms(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::vector<std::vector<std::string>> terms(1);
  std::string token;
  while (in >> token) {
    if (token == "+") {
      terms.emplace_back();
    } else {
      terms.back().push_back(token);
    }
  }
  for (const auto& t : terms)
    if (t.empty()) throw DomainError("expression: empty term in '" + std::string(text) + "'");
  return terms;
}

std::vector<Term> parse_terms(std::string_view text, std::size_t dim, bool allow_u) {
  std::vector<Term> out;
  for (auto tokens : split_terms(text)) {
    Term term;
    if (tokens.back() == "*t") {
      term.times_t = true;
      tokens.pop_back();
      if (tokens.empty()) throw DomainError("expression: '*t' without a term");
    }
    const std::string& kind = tokens.front();
    for (std::size_t i = 1; i < tokens.size(); ++i) term.args.push_back(to_number(tokens[i]));
    std::size_t expected = 0;
    if (kind == "const") {
      term.kind = Term::Kind::constant;
      expected = 1;
    } else if (kind == "affine") {
      term.kind = Term::Kind::affine;
      expected = dim + 1;
    } else if (kind == "sine") {
      term.kind = Term::Kind::sine;
      expected = dim + 1;
    } else if (kind == "bubble") {
      term.kind = Term::Kind::bubble;
      expected = 1;
    } else if (kind == "tanh-u" && allow_u) {
      term.kind = Term::Kind::tanh_u;
      expected = 1;
    } else {
      throw DomainError("expression: unknown term '" + kind + "'");
    }
    if (term.args.size() != expected)
      throw DomainError("expression: '" + kind + "' expects " + std::to_string(expected) + " numbers, got " +
                        std::to_string(term.args.size()));
    out.push_back(std::move(term));
  }
  return out;
}

double eval_term(const Term& term, std::span<const double> box, Point x, double t, double u) {
  double v = 0.0;
  switch (term.kind) {
    case Term::Kind::constant:
      v = term.args[0];
      break;
    case Term::Kind::affine:
      v = term.args[0];
      for (std::size_t j = 0; j < box.size(); ++j) v += term.args[j + 1] * x[j];
      break;
    case Term::Kind::sine:
      v = term.args[0];
      for (std::size_t j = 0; j < box.size(); ++j)
        v *= std::sin(term.args[j + 1] * std::numbers::pi * x[j] / box[j]);
      break;
    case Term::Kind::bubble:
      v = term.args[0];
      for (std::size_t j = 0; j < box.size(); ++j) v *= x[j] * (box[j] - x[j]);
      break;
    case Term::Kind::tanh_u:
      v = term.args[0] * std::tanh(u);
      break;
  }
  return term.times_t ? v * t : v;
}

}  // namespace

SpaceTimeFn parse_space_time(std::string_view text, std::span<const double> box) {
  auto terms = parse_terms(text, box.size(), false);
  std::vector<double> extents(box.begin(), box.end());
  return [terms = std::move(terms), extents = std::move(extents)](Point x, double t) {
    double sum = 0.0;
    for (const auto& term : terms) sum += eval_term(term, extents, x, t, 0.0);
    return sum;
  };
}

CoefficientFn parse_coefficient(std::string_view text, std::span<const double> box,
                                double* lipschitz_out) {
  auto terms = parse_terms(text, box.size(), true);
  if (lipschitz_out != nullptr) {
    double lip = 0.0;
    for (const auto& term : terms)
      if (term.kind == Term::Kind::tanh_u) lip += std::abs(term.args[0]);
    *lipschitz_out = lip;
  }
  std::vector<double> extents(box.begin(), box.end());
  return [terms = std::move(terms), extents = std::move(extents)](Point x, double t, double u) {
    double sum = 0.0;
    for (const auto& term : terms) sum += eval_term(term, extents, x, t, u);
    return sum;
  };
}

}  // namespace anisodnl
