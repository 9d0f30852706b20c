// Copyright 2026 The toolshap Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cctype>
#include <cmath>
#include <cstdio>
#include <map>
#include <string>

#include <nlohmann/json.hpp>

#include "toolshap/errors.hpp"

namespace toolshap {

namespace detail {

// Minimal arithmetic evaluator: + - * / and parentheses over doubles, plus
// the unicode spellings x (U+00D7), / (U+00F7), and minus (U+2212) that chat
// models like to emit. Errors come back as strings, not exceptions, because
// a bad expression is a normal tool outcome the agent should get to see.
class Calculator {
 public:
  explicit Calculator(std::string expr) : src_(std::move(expr)) {}

  std::string run() {
    normalize();
    double value = 0.0;
    if (!expression(value)) return "error: " + error_;
    skip_ws();
    if (pos_ != src_.size()) {
      return "error: unexpected character at position " + std::to_string(pos_);
    }
    if (!std::isfinite(value)) return "error: result is not finite";
    return format(value);
  }

 private:
  void normalize() {
    // Replace the three common unicode operator spellings with ASCII.
    std::string out;
    out.reserve(src_.size());
    for (std::size_t i = 0; i < src_.size();) {
      if (src_.compare(i, 2, "\xc3\x97") == 0) {  // multiplication sign
        out += '*';
        i += 2;
      } else if (src_.compare(i, 2, "\xc3\xb7") == 0) {  // division sign
        out += '/';
        i += 2;
      } else if (src_.compare(i, 3, "\xe2\x88\x92") == 0) {  // minus sign
        out += '-';
        i += 3;
      } else {
        out += src_[i];
        i += 1;
      }
    }
    src_ = std::move(out);
  }

  void skip_ws() {
    while (pos_ < src_.size() &&
           std::isspace(static_cast<unsigned char>(src_[pos_]))) {
      ++pos_;
    }
  }

  bool expression(double& out) {
    if (!term(out)) return false;
    for (;;) {
      skip_ws();
      if (pos_ >= src_.size()) return true;
      const char op = src_[pos_];
      if (op != '+' && op != '-') return true;
      ++pos_;
      double rhs = 0.0;
      if (!term(rhs)) return false;
      out = op == '+' ? out + rhs : out - rhs;
    }
  }

  bool term(double& out) {
    if (!factor(out)) return false;
    for (;;) {
      skip_ws();
      if (pos_ >= src_.size()) return true;
      const char op = src_[pos_];
      if (op != '*' && op != '/') return true;
      ++pos_;
      double rhs = 0.0;
      if (!factor(rhs)) return false;
      if (op == '/') {
        if (rhs == 0.0) return fail("division by zero");
        out /= rhs;
      } else {
        out *= rhs;
      }
    }
  }

  bool factor(double& out) {
    skip_ws();
    if (pos_ >= src_.size()) return fail("expected a value");
    const char c = src_[pos_];
    if (c == '(') {
      ++pos_;
      if (!expression(out)) return false;
      skip_ws();
      if (pos_ >= src_.size() || src_[pos_] != ')') {
        return fail("missing closing parenthesis");
      }
      ++pos_;
      return true;
    }
    if (c == '-') {
      ++pos_;
      if (!factor(out)) return false;
      out = -out;
      return true;
    }
    if (c == '+') {
      ++pos_;
      return factor(out);
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      return number(out);
    }
    return fail(std::string("unexpected character '") + c + "'");
  }

  bool number(double& out) {
    std::size_t end = pos_;
    bool seen_dot = false;
    while (end < src_.size()) {
      const char c = src_[end];
      if (std::isdigit(static_cast<unsigned char>(c))) {
        ++end;
      } else if (c == '.' && !seen_dot) {
        seen_dot = true;
        ++end;
      } else {
        break;
      }
    }
    if (end == pos_ || (end == pos_ + 1 && src_[pos_] == '.')) {
      return fail("malformed number");
    }
    out = std::stod(src_.substr(pos_, end - pos_));
    pos_ = end;
    return true;
  }

  bool fail(std::string message) {
    error_ = std::move(message);
    return false;
  }

  static std::string format(double v) {
    // Integers print without a trailing ".0"; everything else keeps enough
    // digits to round-trip.
    if (v == std::floor(v) && std::abs(v) < 1e15) {
      char buf[32];
      std::snprintf(buf, sizeof(buf), "%.0f", v);
      return buf;
    }
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
  }

  std::string src_;
  std::size_t pos_ = 0;
  std::string error_;
};

inline const std::map<std::string, std::string>& stock_table() {
  static const std::map<std::string, std::string> kPrices = {
      {"ACME", "100.00"}, {"AAPL", "195.40"}, {"MSFT", "410.10"},
      {"GOOG", "178.25"}, {"TSLA", "242.50"},
  };
  return kPrices;
}

inline const std::map<std::string, std::string>& wiki_table() {
  static const std::map<std::string, std::string> kSummaries = {
      {"photosynthesis",
       "Photosynthesis converts sunlight, water, and carbon dioxide into "
       "glucose and oxygen inside plant cells."},
      {"eiffel tower",
       "The Eiffel Tower is a wrought-iron lattice tower in Paris, built in "
       "1889 as the entrance arch to the World's Fair."},
      {"quantum entanglement",
       "Quantum entanglement links particles so that measuring one instantly "
       "constrains the state of the other, regardless of distance."},
  };
  return kSummaries;
}

inline std::string ascii_lower(std::string s) {
  for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

inline std::string arg_string(const nlohmann::json& args, const char* key) {
  if (!args.contains(key) || !args[key].is_string()) return {};
  return args[key].get<std::string>();
}

}  // namespace detail

// Runs the backing function for a tool. Results are always strings — that is
// what gets spliced into the chat transcript — and user-level failures
// (bad expression, unknown symbol) are reported in-band as "error: ..."
// rather than thrown, so agents can react to them.
inline std::string execute_tool(const std::string& executor_id,
                                const nlohmann::json& args) {
  if (executor_id == "calc.eval") {
    return detail::Calculator(detail::arg_string(args, "expression")).run();
  }
  if (executor_id == "stock.quote") {
    std::string symbol = detail::arg_string(args, "symbol");
    for (char& c : symbol) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    const auto& table = detail::stock_table();
    const auto it = table.find(symbol);
    if (it == table.end()) return "error: unknown symbol " + symbol;
    return it->first + ": " + it->second;
  }
  if (executor_id == "wiki.lookup") {
    const std::string topic = detail::ascii_lower(detail::arg_string(args, "topic"));
    const auto& table = detail::wiki_table();
    for (const auto& [key, summary] : table) {
      if (topic.find(key) != std::string::npos) return summary;
    }
    return "No article found for: " + detail::arg_string(args, "topic");
  }
  if (executor_id == "alarm.add") {
    return "Alarm set for " + detail::arg_string(args, "time") + ".";
  }
  if (executor_id == "reminder.add") {
    return "Reminder saved: " + detail::arg_string(args, "text");
  }
  if (executor_id == "music.play") {
    return "Now playing: " + detail::arg_string(args, "track");
  }
  if (executor_id == "hotel.book") {
    return "Booked a room at " + detail::arg_string(args, "name") + ".";
  }
  if (executor_id == "translate.text") {
    // Canned translator: tags the text with the target language. Enough to
    // make the result visibly depend on both arguments.
    return "[" + detail::arg_string(args, "target") + "] " +
           detail::arg_string(args, "text");
  }
  throw ExecutorNotFoundError(executor_id);
}

}  // namespace toolshap
