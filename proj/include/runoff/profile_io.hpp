#pragma once

#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "runoff/core.hpp"

namespace runoff {

// Text format:
//   m n_ballots
//   weight: i0 > i1 > ... > i(m-1)
// Blank lines and lines starting with '#' are ignored by the reader.
inline void write_profile(std::ostream& os, const Profile& p) {
  os << p.candidates() << ' ' << p.size() << '\n';
  for (const auto& b : p.ballots()) {
    os << b.weight << ':';
    for (int pos = 0; pos < b.ranking.size(); ++pos) {
      os << (pos == 0 ? " " : " > ") << b.ranking.at(pos);
    }
    os << '\n';
  }
}

inline std::string profile_to_string(const Profile& p) {
  std::ostringstream os;
  write_profile(os, p);
  return os.str();
}

namespace detail {

inline bool next_content_line(std::istream& is, std::string& line, int& line_no) {
  while (std::getline(is, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    return true;
  }
  return false;
}

inline Ranking parse_ranking(const std::string& text, int m, int line_no) {
  std::vector<Candidate> order;
  std::string token;
  std::istringstream ts(text);
  while (std::getline(ts, token, '>')) {
    std::istringstream one(token);
    long long id = 0;
    std::string trailing;
    if (!(one >> id) || (one >> trailing)) {
      throw Error("line " + std::to_string(line_no) + ": bad candidate id '" + token + "'");
    }
    order.push_back(static_cast<Candidate>(id));
  }
  if (static_cast<int>(order.size()) != m) {
    throw Error("line " + std::to_string(line_no) + ": expected " + std::to_string(m) +
                " candidates, got " + std::to_string(order.size()));
  }
  try {
    return Ranking(std::move(order));
  } catch (const Error& e) {
    throw Error("line " + std::to_string(line_no) + ": " + e.what());
  }
}

}  // namespace detail

namespace detail {

// Reads the profile whose header is already in `line`.
inline Profile read_body(std::istream& is, std::string& line, int& line_no) {
  std::istringstream header(line);
  long long m = 0, count = 0;
  std::string extra;
  if (!(header >> m >> count) || (header >> extra) || m < 1 || count < 0) {
    throw Error("line " + std::to_string(line_no) + ": header must be 'm n_ballots'");
  }

  Profile p(static_cast<int>(m));
  for (long long k = 0; k < count; ++k) {
    if (!next_content_line(is, line, line_no)) {
      throw Error("expected " + std::to_string(count) + " ballots, got " + std::to_string(k));
    }
    const auto colon = line.find(':');
    if (colon == std::string::npos) {
      throw Error("line " + std::to_string(line_no) + ": missing 'weight:' prefix");
    }
    std::istringstream ws(line.substr(0, colon));
    long long w = 0;
    if (!(ws >> w) || (ws >> extra) || w < 1) {
      throw Error("line " + std::to_string(line_no) + ": weight must be a positive integer");
    }
    p.add(parse_ranking(line.substr(colon + 1), static_cast<int>(m), line_no), w);
  }
  return p;
}

}  // namespace detail

// Exactly one profile; anything after its last ballot is an error.
inline Profile read_profile(std::istream& is) {
  std::string line;
  int line_no = 0;
  if (!detail::next_content_line(is, line, line_no)) throw Error("empty profile input");
  Profile p = detail::read_body(is, line, line_no);
  if (detail::next_content_line(is, line, line_no)) {
    throw Error("line " + std::to_string(line_no) + ": trailing content after last ballot");
  }
  return p;
}

// Zero or more profiles back to back (witness files hold two).
inline std::vector<Profile> read_profiles(std::istream& is) {
  std::vector<Profile> out;
  std::string line;
  int line_no = 0;
  while (detail::next_content_line(is, line, line_no)) out.push_back(detail::read_body(is, line, line_no));
  return out;
}

inline Profile profile_from_string(const std::string& text) {
  std::istringstream is(text);
  return read_profile(is);
}

}  // namespace runoff
