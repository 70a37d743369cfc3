#include "clickbic/io.hpp"

#include <zlib.h>

#include <charconv>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "clickbic/metrics.hpp"

namespace clickbic::io {

using nlohmann::json;

std::string read_text(const std::filesystem::path& path) {
  gzFile f = gzopen(path.c_str(), "rb");
  if (!f) throw Error("cannot open '" + path.string() + "'");
  std::string out;
  char buf[1 << 16];
  for (;;) {
    const int got = gzread(f, buf, sizeof buf);
    if (got < 0) {
      int code = 0;
      std::string msg = gzerror(f, &code);
      gzclose(f);
      throw Error("cannot read '" + path.string() + "': " + msg);
    }
    if (got == 0) break;
    out.append(buf, static_cast<std::size_t>(got));
  }
  gzclose(f);
  return out;
}

void write_text(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path.string() + "'");
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw Error("write to '" + path.string() + "' failed");
}

std::string format_double(double v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

namespace {

std::vector<std::string> split_csv_line(std::string_view line) {
  std::vector<std::string> cells;
  std::string cur;
  bool quoted = false;
  for (std::size_t k = 0; k < line.size(); ++k) {
    const char ch = line[k];
    if (quoted) {
      if (ch == '"' && k + 1 < line.size() && line[k + 1] == '"') {
        cur.push_back('"');
        ++k;
      } else if (ch == '"') {
        quoted = false;
      } else {
        cur.push_back(ch);
      }
    } else if (ch == '"') {
      quoted = true;
    } else if (ch == ',') {
      cells.push_back(std::move(cur));
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  cells.push_back(std::move(cur));
  return cells;
}

std::string trim(std::string s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::string csv_cell(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out.push_back('"');
    out.push_back(ch);
  }
  out.push_back('"');
  return out;
}

json bicluster_json(const Bicluster& b, double acv, std::size_t volume) {
  return json{{"rows", b.rows}, {"cols", b.cols}, {"acv", acv}, {"volume", volume}};
}

Bicluster bicluster_from(const json& j) {
  Bicluster b;
  b.rows = j.at("rows").get<std::vector<std::size_t>>();
  b.cols = j.at("cols").get<std::vector<std::size_t>>();
  return b;
}

}  // namespace

AccessMatrix parse_matrix_csv(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  std::vector<std::string> header;
  std::vector<std::string> users;
  std::vector<double> values;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    auto cells = split_csv_line(line);
    for (auto& c : cells) c = trim(c);
    if (header.empty()) {
      if (cells.size() < 2) throw ParseError(line_no, "header needs at least one page label");
      header.assign(cells.begin() + 1, cells.end());
      continue;
    }
    if (cells.size() != header.size() + 1)
      throw ParseError(line_no, "expected " + std::to_string(header.size() + 1) + " cells, got " +
                                    std::to_string(cells.size()));
    users.push_back(cells[0]);
    for (std::size_t k = 1; k < cells.size(); ++k) {
      double v = 0.0;
      const auto& c = cells[k];
      auto [ptr, ec] = std::from_chars(c.data(), c.data() + c.size(), v);
      if (ec != std::errc{} || ptr != c.data() + c.size() || c.empty())
        throw ParseError(line_no, "malformed number '" + c + "'");
      if (!(v >= 0.0)) throw ParseError(line_no, "negative visit count '" + c + "'");
      values.push_back(v);
    }
  }
  if (users.empty()) throw ParseError(line_no, "no data lines");
  const std::size_t n = users.size(), m = header.size();
  return AccessMatrix(n, m, std::move(values), std::move(users), std::move(header));
}

std::string matrix_to_csv(const AccessMatrix& matrix) {
  std::string out = "user";
  for (const auto& l : matrix.col_labels()) out += "," + csv_cell(l);
  out += "\n";
  for (std::size_t i = 0; i < matrix.rows(); ++i) {
    out += csv_cell(matrix.row_labels()[i]);
    for (double v : matrix.row(i)) out += "," + format_double(v);
    out += "\n";
  }
  return out;
}

std::string biclusters_to_json(const AccessMatrix& matrix, std::span<const Bicluster> biclusters) {
  json arr = json::array();
  for (const auto& b : biclusters) {
    const double a = (b.rows.size() >= 2 || b.cols.size() >= 2) ? metrics::acv(matrix, b) : 0.0;
    arr.push_back(bicluster_json(b, a, metrics::volume(b)));
  }
  return arr.dump(2) + "\n";
}

std::vector<ScoredBicluster> parse_biclusters_json(std::string_view text) {
  std::vector<ScoredBicluster> out;
  try {
    for (const auto& j : json::parse(text))
      out.push_back({bicluster_from(j), j.at("acv").get<double>(), j.at("volume").get<std::size_t>()});
  } catch (const json::exception& e) {
    throw ParseError(0, std::string("bicluster JSON: ") + e.what());
  }
  return out;
}

std::string synthetic_to_json(const synth::SynthResult& data) {
  const auto& mx = data.matrix;
  json rows = json::array();
  for (std::size_t i = 0; i < mx.rows(); ++i) {
    auto r = mx.row(i);
    rows.push_back(std::vector<double>(r.begin(), r.end()));
  }
  json truth = json::array();
  for (const auto& b : data.truth) truth.push_back(bicluster_json(b, metrics::acv(mx, b), metrics::volume(b)));
  json doc{{"rows", mx.rows()},
           {"cols", mx.cols()},
           {"row_labels", mx.row_labels()},
           {"col_labels", mx.col_labels()},
           {"data", rows},
           {"truth", truth},
           {"notes", data.notes}};
  return doc.dump() + "\n";
}

SyntheticInput parse_synthetic_json(std::string_view text) {
  try {
    const json doc = json::parse(text);
    const auto n = doc.at("rows").get<std::size_t>();
    const auto m = doc.at("cols").get<std::size_t>();
    std::vector<double> values;
    values.reserve(n * m);
    const auto& data = doc.at("data");
    if (data.size() != n) throw ParseError(0, "synthetic JSON: data row count differs from 'rows'");
    for (const auto& r : data) {
      if (r.size() != m) throw ParseError(0, "synthetic JSON: data row length differs from 'cols'");
      for (const auto& v : r) values.push_back(v.get<double>());
    }
    std::vector<std::string> row_labels, col_labels;
    if (doc.contains("row_labels")) row_labels = doc["row_labels"].get<std::vector<std::string>>();
    else for (std::size_t i = 0; i < n; ++i) row_labels.push_back("u" + std::to_string(i));
    if (doc.contains("col_labels")) col_labels = doc["col_labels"].get<std::vector<std::string>>();
    else for (std::size_t j = 0; j < m; ++j) col_labels.push_back("p" + std::to_string(j));
    SyntheticInput in{AccessMatrix(n, m, std::move(values), std::move(row_labels), std::move(col_labels)), {}};
    if (doc.contains("truth"))
      for (const auto& t : doc["truth"]) {
        in.truth.push_back(bicluster_from(t));
        check_bounds(in.truth.back(), n, m);
      }
    return in;
  } catch (const json::exception& e) {
    throw ParseError(0, std::string("synthetic JSON: ") + e.what());
  }
}

std::string stage_trace_to_csv(const greedy::StageTrace& trace) {
  std::string out = "stage,avg_acv,avg_volume\n";
  for (const auto& r : trace)
    out += std::string(greedy::stage_name(r.stage)) + "," + format_double(r.avg_acv) + "," +
           format_double(r.avg_volume) + "\n";
  return out;
}

std::string ga_history_to_csv(std::span<const evolve::GenerationRecord> history) {
  std::string out = "generation,best_fitness,mean_fitness,best_acv,best_volume\n";
  for (const auto& r : history)
    out += std::to_string(r.generation) + "," + format_double(r.best_fitness) + "," +
           format_double(r.mean_fitness) + "," + format_double(r.best_acv) + "," +
           std::to_string(r.best_volume) + "\n";
  return out;
}

}  // namespace clickbic::io
