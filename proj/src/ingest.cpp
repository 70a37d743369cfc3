#include "clickbic/ingest.hpp"

#include <cctype>
#include <charconv>
#include <sstream>

namespace clickbic::ingest {

namespace {

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i > start) out.push_back(line.substr(start, i - start));
  }
  return out;
}

}  // namespace

SessionFile parse_sessions(std::istream& in) {
  SessionFile file;
  bool have_header = false;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.front() == '%') continue;
    auto tokens = split_ws(line);
    if (tokens.empty()) continue;
    if (!have_header) {
      for (auto t : tokens) file.page_names.emplace_back(t);
      have_header = true;
      continue;
    }
    Session s;
    s.reserve(tokens.size());
    for (auto t : tokens) {
      std::uint32_t v = 0;
      auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
      if (ec != std::errc{} || ptr != t.data() + t.size())
        throw ParseError(line_no, "malformed token '" + std::string(t) + "'");
      if (v == 0 || v > file.page_names.size())
        throw ParseError(line_no, "page index " + std::to_string(v) + " outside 1.." +
                                      std::to_string(file.page_names.size()));
      s.push_back(v);
    }
    file.sessions.push_back(std::move(s));
  }
  if (file.sessions.empty()) throw ParseError(line_no, "no data lines");
  return file;
}

SessionFile parse_sessions(const std::string& text) {
  std::istringstream in(text);
  return parse_sessions(in);
}

std::vector<Session> filter_sessions(const std::vector<Session>& sessions, std::size_t min_len,
                                     std::size_t max_len) {
  if (min_len > max_len) throw Error("filter bounds require min_len <= max_len");
  std::vector<Session> kept;
  for (const auto& s : sessions)
    if (s.size() >= min_len && s.size() <= max_len) kept.push_back(s);
  return kept;
}

AccessMatrix build_access_matrix(const std::vector<Session>& sessions, std::size_t page_count) {
  std::vector<std::string> names;
  names.reserve(page_count);
  for (std::size_t j = 0; j < page_count; ++j) names.push_back("p" + std::to_string(j + 1));
  return build_access_matrix(sessions, names);
}

AccessMatrix build_access_matrix(const std::vector<Session>& sessions,
                                 const std::vector<std::string>& page_names) {
  if (sessions.empty()) throw Error("cannot build an access matrix from zero sessions");
  const std::size_t n = sessions.size();
  const std::size_t m = page_names.size();
  std::vector<double> values(n * m, 0.0);
  std::vector<std::string> users;
  users.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (auto page : sessions[i]) {
      if (page == 0 || page > m)
        throw Error("session " + std::to_string(i) + " references page " + std::to_string(page) +
                    " beyond page count " + std::to_string(m));
      values[i * m + (page - 1)] += 1.0;
    }
    users.push_back("u" + std::to_string(i));
  }
  return AccessMatrix(n, m, std::move(values), std::move(users), page_names);
}

double mean_session_length(const std::vector<Session>& sessions) noexcept {
  if (sessions.empty()) return 0.0;
  std::size_t total = 0;
  for (const auto& s : sessions) total += s.size();
  return static_cast<double>(total) / static_cast<double>(sessions.size());
}

}  // namespace clickbic::ingest
