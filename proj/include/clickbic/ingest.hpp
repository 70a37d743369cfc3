#pragma once

#include <cstddef>
#include <istream>
#include <limits>
#include <string>
#include <vector>

#include "clickbic/types.hpp"

namespace clickbic::ingest {

struct SessionFile {
  std::vector<Session> sessions;
  std::vector<std::string> page_names;

  std::size_t page_count() const noexcept { return page_names.size(); }
};

/// Reads the msnbc sequence format: '%' comment lines, one header line of
/// page-category names, then one session of 1-based indices per line.
/// Blank lines are skipped. Throws ParseError carrying the line number.
SessionFile parse_sessions(std::istream& in);
SessionFile parse_sessions(const std::string& text);

inline constexpr std::size_t kUnboundedLength = std::numeric_limits<std::size_t>::max();

/// Keeps sessions whose length lies in [min_len, max_len], in order.
std::vector<Session> filter_sessions(const std::vector<Session>& sessions, std::size_t min_len,
                                     std::size_t max_len);

/// a_ij = number of times page j+1 occurs in session i.
AccessMatrix build_access_matrix(const std::vector<Session>& sessions, std::size_t page_count);
AccessMatrix build_access_matrix(const std::vector<Session>& sessions,
                                 const std::vector<std::string>& page_names);

double mean_session_length(const std::vector<Session>& sessions) noexcept;

}  // namespace clickbic::ingest
