#include "mcas/model_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <vector>

#include "mcas/error.hpp"

namespace mcas {
namespace {

struct Token {
  std::string_view text;
  std::size_t column;  // 1-based
};

struct Line {
  std::size_t number;  // 1-based
  std::vector<Token> tokens;
};

std::vector<Line> tokenize(std::string_view text) {
  std::vector<Line> lines;
  std::size_t number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    ++number;
    std::string_view raw = text.substr(pos, end - pos);
    if (auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);

    Line line{number, {}};
    std::size_t i = 0;
    while (i < raw.size()) {
      const char c = raw[i];
      if (c == ' ' || c == '\t' || c == '\r') {
        ++i;
      } else if (c == ':') {
        line.tokens.push_back({raw.substr(i, 1), i + 1});
        ++i;
      } else {
        std::size_t j = i;
        while (j < raw.size() && raw[j] != ' ' && raw[j] != '\t' && raw[j] != '\r' &&
               raw[j] != ':') {
          ++j;
        }
        line.tokens.push_back({raw.substr(i, j - i), i + 1});
        i = j;
      }
    }
    if (!line.tokens.empty()) lines.push_back(std::move(line));
    if (end == text.size()) break;
    pos = end + 1;
  }
  return lines;
}

std::size_t parse_index(const Line& line, const Token& tok) {
  std::size_t value = 0;
  auto [ptr, ec] = std::from_chars(tok.text.data(), tok.text.data() + tok.text.size(), value);
  if (ec != std::errc() || ptr != tok.text.data() + tok.text.size()) {
    throw SyntaxError(line.number, tok.column,
                      "expected a nonnegative integer, got '" + std::string(tok.text) + "'");
  }
  return value;
}

double parse_real(const Line& line, const Token& tok) {
  std::string_view t = tok.text;
  if (!t.empty() && t.front() == '+') t.remove_prefix(1);
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
  if (ec != std::errc() || ptr != t.data() + t.size() || t.empty() || !std::isfinite(value)) {
    throw SyntaxError(line.number, tok.column,
                      "expected a real number, got '" + std::string(tok.text) + "'");
  }
  return value;
}

void expect_colon(const Line& line, std::size_t i) {
  if (i >= line.tokens.size()) {
    throw SyntaxError(line.number, line.tokens.back().column + line.tokens.back().text.size(),
                      "expected ':'");
  }
  if (line.tokens[i].text != ":") {
    throw SyntaxError(line.number, line.tokens[i].column,
                      "expected ':', got '" + std::string(line.tokens[i].text) + "'");
  }
}

void expect_count(const Line& line, std::size_t count) {
  if (line.tokens.size() < count) {
    const Token& last = line.tokens.back();
    throw SyntaxError(line.number, last.column + last.text.size(), "missing fields");
  }
  if (line.tokens.size() > count) {
    throw SyntaxError(line.number, line.tokens[count].column,
                      "unexpected trailing token '" + std::string(line.tokens[count].text) + "'");
  }
}

void check_range(std::size_t value, std::size_t limit, const char* what, const Line& line) {
  if (value >= limit) {
    throw SemanticError("line " + std::to_string(line.number) + ": dangling " + what + " index " +
                        std::to_string(value) + " (size " + std::to_string(limit) + ")");
  }
}

void check_probability(double p, const Line& line) {
  if (p < 0.0 || p > 1.0) {
    throw SemanticError("line " + std::to_string(line.number) + ": probability " +
                        format_real(p) + " outside [0,1]");
  }
}

}  // namespace

std::string format_real(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::general, 17);
  if (ec != std::errc()) throw Error("format_real: conversion failed");
  return std::string(buf, ptr);
}

DecModel parse_model(std::string_view text) {
  const std::vector<Line> lines = tokenize(text);
  if (lines.empty()) throw SyntaxError(1, 1, "empty model file");

  std::optional<std::size_t> agents, states;
  std::optional<std::vector<std::size_t>> action_sizes, observation_sizes;
  std::optional<double> discount;
  std::optional<std::vector<double>> start;
  std::vector<const Line*> entries;
  std::map<std::string, std::size_t> seen;

  for (const Line& line : lines) {
    const Token& key = line.tokens.front();
    if (key.text == "T" || key.text == "Z" || key.text == "R") {
      entries.push_back(&line);
      continue;
    }
    expect_colon(line, 1);
    const std::string name(key.text);
    if (auto it = seen.find(name); it != seen.end()) {
      throw SemanticError("line " + std::to_string(line.number) + ": duplicate '" + name +
                          "' (first on line " + std::to_string(it->second) + ")");
    }
    if (name == "agents") {
      expect_count(line, 3);
      agents = parse_index(line, line.tokens[2]);
    } else if (name == "states") {
      expect_count(line, 3);
      states = parse_index(line, line.tokens[2]);
    } else if (name == "discount") {
      expect_count(line, 3);
      discount = parse_real(line, line.tokens[2]);
    } else if (name == "actions" || name == "observations") {
      if (line.tokens.size() < 3) throw SyntaxError(line.number, key.column, "missing sizes");
      std::vector<std::size_t> sizes;
      for (std::size_t i = 2; i < line.tokens.size(); ++i) {
        sizes.push_back(parse_index(line, line.tokens[i]));
      }
      (name == "actions" ? action_sizes : observation_sizes) = std::move(sizes);
    } else if (name == "start") {
      if (line.tokens.size() < 3) throw SyntaxError(line.number, key.column, "missing values");
      std::vector<double> probs;
      for (std::size_t i = 2; i < line.tokens.size(); ++i) {
        probs.push_back(parse_real(line, line.tokens[i]));
      }
      start = std::move(probs);
    } else {
      throw SyntaxError(line.number, key.column, "unknown keyword '" + name + "'");
    }
    seen.emplace(name, line.number);
  }

  for (const char* required : {"agents", "states", "actions", "observations", "discount"}) {
    if (!seen.contains(required)) {
      throw SyntaxError(1, 1, std::string("missing required header '") + required + ":'");
    }
  }
  if (*agents == 0) throw SemanticError("agents must be positive");
  if (*states == 0) throw SemanticError("states must be positive");
  if (action_sizes->size() != *agents) {
    throw SemanticError("actions: lists " + std::to_string(action_sizes->size()) +
                        " sizes for " + std::to_string(*agents) + " agents");
  }
  if (observation_sizes->size() != *agents) {
    throw SemanticError("observations: lists " + std::to_string(observation_sizes->size()) +
                        " sizes for " + std::to_string(*agents) + " agents");
  }
  for (std::size_t k : *action_sizes) {
    if (k == 0) throw SemanticError("agent action space of size zero");
  }
  for (std::size_t m : *observation_sizes) {
    if (m == 0) throw SemanticError("agent observation space of size zero");
  }
  if (!(*discount >= 0.0 && *discount < 1.0)) {
    throw SemanticError("discount " + format_real(*discount) + " outside [0,1)");
  }

  FactoredSpaces spaces{JointIndexCodec(*action_sizes), JointIndexCodec(*observation_sizes)};
  const std::size_t S = *states;
  const std::size_t A = spaces.actions.size();
  const std::size_t O = spaces.observations.size();
  ModelTables tables(S, A, O);
  tables.discount = *discount;
  if (start) {
    if (start->size() != S) {
      throw SemanticError("start: has " + std::to_string(start->size()) + " entries for " +
                          std::to_string(S) + " states");
    }
    double total = 0.0;
    for (double p : *start) {
      if (p < 0.0 || p > 1.0) throw SemanticError("start: probability outside [0,1]");
      total += p;
    }
    if (std::fabs(total - 1.0) > kStochasticTolerance) {
      throw SemanticError("start: distribution sums to " + format_real(total));
    }
    tables.initial_belief = *start;
  }

  for (const Line* line : entries) {
    const auto& t = line->tokens;
    const char kind = t.front().text.front();
    expect_colon(*line, 1);
    if (kind == 'T' || kind == 'Z') {
      // K: i : j : k value
      expect_count(*line, 8);
      expect_colon(*line, 3);
      expect_colon(*line, 5);
      const std::size_t first = parse_index(*line, t[2]);
      const std::size_t second = parse_index(*line, t[4]);
      const std::size_t third = parse_index(*line, t[6]);
      const double p = parse_real(*line, t[7]);
      check_probability(p, *line);
      check_range(first, A, "joint action", *line);
      check_range(second, S, "state", *line);
      if (kind == 'T') {
        check_range(third, S, "state", *line);
        tables.T(second, first, third) = p;
      } else {
        check_range(third, O, "joint observation", *line);
        tables.Z(first, second, third) = p;
      }
    } else {
      // R: s : a value
      expect_count(*line, 6);
      expect_colon(*line, 3);
      const std::size_t s = parse_index(*line, t[2]);
      const std::size_t a = parse_index(*line, t[4]);
      const double r = parse_real(*line, t[5]);
      check_range(s, S, "state", *line);
      check_range(a, A, "joint action", *line);
      tables.R(s, a) = r;
    }
  }

  for (StateIndex s = 0; s < S; ++s) {
    for (ActionIndex a = 0; a < A; ++a) {
      double total = 0.0;
      for (StateIndex sp = 0; sp < S; ++sp) total += tables.T(s, a, sp);
      if (std::fabs(total - 1.0) > kStochasticTolerance) {
        throw SemanticError("transition row (s=" + std::to_string(s) + ", a=" +
                            std::to_string(a) + ") sums to " + format_real(total));
      }
    }
  }
  for (ActionIndex a = 0; a < A; ++a) {
    for (StateIndex sp = 0; sp < S; ++sp) {
      double total = 0.0;
      for (ObservationIndex o = 0; o < O; ++o) total += tables.Z(a, sp, o);
      if (std::fabs(total - 1.0) > kStochasticTolerance) {
        throw SemanticError("observation row (a=" + std::to_string(a) + ", s'=" +
                            std::to_string(sp) + ") sums to " + format_real(total));
      }
    }
  }

  return DecModel(TabularModel(std::move(tables)), std::move(spaces));
}

std::string emit_model(const DecModel& dec, std::string_view header_comment) {
  const TabularModel& m = dec.joint();
  const auto& spaces = dec.spaces();
  std::string out;
  out.reserve(1 << 16);

  std::istringstream comment{std::string(header_comment)};
  for (std::string line; std::getline(comment, line);) {
    out += line.empty() ? "#" : "# " + line;
    out += '\n';
  }

  out += "agents: " + std::to_string(dec.num_agents()) + "\n";
  out += "states: " + std::to_string(m.num_states()) + "\n";
  out += "actions:";
  for (std::size_t k : spaces.actions.sizes()) out += " " + std::to_string(k);
  out += "\nobservations:";
  for (std::size_t k : spaces.observations.sizes()) out += " " + std::to_string(k);
  out += "\ndiscount: " + format_real(m.discount()) + "\n";
  out += "start:";
  for (double p : m.initial_belief().probs()) out += " " + format_real(p);
  out += "\n";

  for (StateIndex s = 0; s < m.num_states(); ++s) {
    for (ActionIndex a = 0; a < m.num_actions(); ++a) {
      auto row = m.transition_row(s, a);
      for (StateIndex sp = 0; sp < m.num_states(); ++sp) {
        if (row[sp] != 0.0) {
          out += "T: " + std::to_string(a) + " : " + std::to_string(s) + " : " +
                 std::to_string(sp) + " " + format_real(row[sp]) + "\n";
        }
      }
    }
  }
  for (ActionIndex a = 0; a < m.num_actions(); ++a) {
    for (StateIndex sp = 0; sp < m.num_states(); ++sp) {
      for (ObservationIndex o = 0; o < m.num_observations(); ++o) {
        const double p = m.observation(a, sp, o);
        if (p != 0.0) {
          out += "Z: " + std::to_string(a) + " : " + std::to_string(sp) + " : " +
                 std::to_string(o) + " " + format_real(p) + "\n";
        }
      }
    }
  }
  for (StateIndex s = 0; s < m.num_states(); ++s) {
    for (ActionIndex a = 0; a < m.num_actions(); ++a) {
      const double r = m.reward(s, a);
      if (r != 0.0) {
        out += "R: " + std::to_string(s) + " : " + std::to_string(a) + " " + format_real(r) +
               "\n";
      }
    }
  }
  return out;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "' for reading");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void save_text_file(const std::string& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot open '" + path + "' for writing");
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  if (!out) throw Error("write to '" + path + "' failed");
}

DecModel load_model_file(const std::string& path) { return parse_model(read_text_file(path)); }

}  // namespace mcas
