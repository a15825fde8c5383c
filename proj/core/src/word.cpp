#include "cmvspec/word.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <numeric>

#include "json.hpp"

namespace cmvspec {

using nlohmann::json;

VerblunskyWord::VerblunskyWord(std::vector<VerblunskyPair> pairs, double r)
    : pairs_(std::move(pairs)), r_(r) {
  if (pairs_.empty() || pairs_.size() % 2 != 0) {
    throw Error(ErrorCode::InvalidWord, "period must be a positive even integer, got " +
                                            std::to_string(pairs_.size()));
  }
  if (!(r_ > 0.0 && r_ < 1.0)) {
    throw Error(ErrorCode::InvalidWord, "bound r must lie in (0, 1)");
  }
  for (std::size_t n = 0; n < pairs_.size(); ++n) {
    if (std::abs(pairs_[n].alpha.value()) > r_) {
      throw Error(ErrorCode::InvalidWord, "|alpha_" + std::to_string(n) + "| exceeds r");
    }
    if (!std::isfinite(pairs_[n].lambda_arg)) {
      throw Error(ErrorCode::InvalidWord, "non-finite lambda_arg");
    }
  }
}

double VerblunskyWord::log_rho_inf() const {
  double s = 0.0;
  for (const auto& p : pairs_) s += std::log1p(-p.alpha.abs2());
  return s / (2.0 * static_cast<double>(q()));
}

VerblunskyWord VerblunskyWord::repeated(index_t k) const {
  if (k < 1) throw Error(ErrorCode::InvalidWord, "repeat count must be positive");
  std::vector<VerblunskyPair> out;
  out.reserve(pairs_.size() * static_cast<std::size_t>(k));
  for (index_t j = 0; j < k; ++j) out.insert(out.end(), pairs_.begin(), pairs_.end());
  return VerblunskyWord(std::move(out), r_);
}

double VerblunskyWord::distance(const VerblunskyWord& other) const {
  const index_t period = std::lcm(q(), other.q());
  double worst = 0.0;
  for (index_t n = 0; n < period; ++n) {
    const double d = std::abs(alpha(n) - other.alpha(n)) + std::abs(lambda(n) - other.lambda(n));
    worst = std::max(worst, d);
  }
  return worst;
}

bool VerblunskyWord::operator==(const VerblunskyWord& other) const {
  if (q() != other.q() || r_ != other.r_) return false;
  for (index_t n = 0; n < q(); ++n) {
    if (alpha(n) != other.alpha(n) || lambda_arg(n) != other.lambda_arg(n)) return false;
  }
  return true;
}

VerblunskyWord free_word(index_t q) { return constant_word(0.0, q); }

VerblunskyWord constant_word(cplx alpha, index_t q, double lambda_arg, double r) {
  if (q < 2) throw Error(ErrorCode::InvalidWord, "period must be at least 2");
  std::vector<VerblunskyPair> pairs(static_cast<std::size_t>(q),
                                    VerblunskyPair{DiskPoint(alpha), lambda_arg});
  return VerblunskyWord(std::move(pairs), r);
}

std::string word_to_json(const VerblunskyWord& word) {
  json j;
  j["q"] = word.q();
  j["r"] = word.r();
  json pairs = json::array();
  for (const auto& p : word.pairs()) {
    pairs.push_back({{"alpha", {p.alpha.value().real(), p.alpha.value().imag()}},
                     {"lambda_arg", p.lambda_arg}});
  }
  j["pairs"] = std::move(pairs);
  return j.dump(2);
}

VerblunskyWord word_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::Config, std::string("word file: ") + e.what());
  }
  try {
    const double r = j.value("r", kDefaultRadius);
    std::vector<VerblunskyPair> pairs;
    for (const auto& p : j.at("pairs")) {
      const auto& a = p.at("alpha");
      if (!a.is_array() || a.size() != 2) {
        throw Error(ErrorCode::Config, "alpha must be [re, im]");
      }
      pairs.push_back({DiskPoint(cplx(a[0].get<double>(), a[1].get<double>())),
                       p.value("lambda_arg", 0.0)});
    }
    if (j.contains("q") && j.at("q").get<std::size_t>() != pairs.size()) {
      throw Error(ErrorCode::InvalidWord, "q does not match the number of pairs");
    }
    return VerblunskyWord(std::move(pairs), r);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::Config, std::string("word file: ") + e.what());
  }
}

VerblunskyWord read_word_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Config, "cannot open word file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return word_from_json(ss.str());
}

void write_word_file(const VerblunskyWord& word, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::Config, "cannot write " + path);
  out << word_to_json(word) << '\n';
}

}  // namespace cmvspec
