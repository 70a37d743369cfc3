#include "clickbic/pipeline.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>

#include "clickbic/ingest.hpp"
#include "clickbic/io.hpp"
#include "clickbic/random.hpp"

namespace clickbic::pipeline {

namespace fs = std::filesystem;

std::string_view format_name(InputFormat f) noexcept {
  switch (f) {
    case InputFormat::msnbc: return "msnbc";
    case InputFormat::matrix_csv: return "matrix-csv";
    case InputFormat::synthetic_json: return "synthetic-json";
  }
  return "unknown";
}

InputFormat parse_format(std::string_view name) {
  if (name == "msnbc") return InputFormat::msnbc;
  if (name == "matrix-csv") return InputFormat::matrix_csv;
  if (name == "synthetic-json") return InputFormat::synthetic_json;
  throw Error("unknown input format '" + std::string(name) + "'");
}

void PipelineConfig::validate() const {
  if (min_len > max_len) throw Error("--min-len must not exceed --max-len");
  if (seeding.k_users < 1 || seeding.k_pages < 1) throw Error("--ku and --kp must be at least 1");
  if (seeding.kmeans.max_iterations < 1) throw Error("k-means needs at least one iteration");
  ga.validate();
}

LoadedInput load_input(const PipelineConfig& cfg) {
  const std::string text = io::read_text(cfg.input);
  LoadedInput in;
  switch (cfg.format) {
    case InputFormat::msnbc: {
      auto file = ingest::parse_sessions(text);
      auto kept = ingest::filter_sessions(file.sessions, cfg.min_len, cfg.max_len);
      if (kept.empty())
        throw Error("no sessions with length in [" + std::to_string(cfg.min_len) + ", " +
                    std::to_string(cfg.max_len) + "]");
      in.summary.sessions_read = file.sessions.size();
      in.summary.sessions_kept = kept.size();
      in.summary.mean_length_all = ingest::mean_session_length(file.sessions);
      in.summary.mean_length_kept = ingest::mean_session_length(kept);
      in.matrix = ingest::build_access_matrix(kept, file.page_names);
      break;
    }
    case InputFormat::matrix_csv:
      in.matrix = io::parse_matrix_csv(text);
      break;
    case InputFormat::synthetic_json: {
      auto syn = io::parse_synthetic_json(text);
      in.matrix = std::move(syn.matrix);
      in.truth = std::move(syn.truth);
      break;
    }
  }
  in.summary.rows = in.matrix.rows();
  in.summary.cols = in.matrix.cols();
  return in;
}

StageSummary summarize(std::string method, const AccessMatrix& matrix,
                       std::span<const Bicluster> biclusters) {
  StageSummary s;
  s.method = std::move(method);
  s.count = biclusters.size();
  if (biclusters.empty()) return s;
  double vol = 0.0, acv = 0.0;
  for (const auto& b : biclusters) {
    vol += static_cast<double>(metrics::volume(b));
    acv += metrics::acv(matrix, b);
  }
  s.avg_volume = vol / static_cast<double>(s.count);
  s.avg_acv = acv / static_cast<double>(s.count);
  if (biclusters.size() >= 2) {
    const auto ov = metrics::overlap_degree(biclusters, matrix.rows(), matrix.cols());
    s.overlap = ov.r;
    s.overlap_unclamped = ov.r_unclamped;
  }
  return s;
}

RunReport analyze(const AccessMatrix& matrix, const PipelineConfig& cfg) {
  cfg.validate();
  RunReport rep;
  rep.input.rows = matrix.rows();
  rep.input.cols = matrix.cols();
  rep.seeding_seed = derive_seed(cfg.seed, {1});
  rep.ga_seed = derive_seed(cfg.seed, {2});

  seeding::SeedingConfig seed_cfg = cfg.seeding;
  seed_cfg.kmeans.seed = rep.seeding_seed;
  rep.seeds = seeding::form_seeds(matrix, seed_cfg).seeds;
  if (rep.seeds.empty())
    throw Error("k-means produced no seed of at least 2x2; lower --ku or --kp");
  rep.seed_summary = summarize("two-way-kmeans", matrix, rep.seeds);

  if (cfg.run_greedy) {
    auto grown = greedy::grow_all(matrix, rep.seeds, cfg.greedy);
    rep.grown = std::move(grown.biclusters);
    rep.trace = std::move(grown.trace);
  } else {
    rep.grown = rep.seeds;
  }
  rep.greedy_summary = summarize(cfg.run_greedy ? "greedy" : "greedy-skipped", matrix, rep.grown);

  evolve::GaConfig ga_cfg = cfg.ga;
  ga_cfg.seed = rep.ga_seed;
  rep.ga = evolve::run_ga(matrix, rep.grown, ga_cfg);
  rep.final_biclusters = evolve::distinct_fit(rep.ga);
  rep.ga_summary = summarize("genetic-algorithm", matrix, rep.final_biclusters);
  double vol = 0.0, acv = 0.0;
  for (std::size_t k = 0; k < rep.ga.population.size(); ++k) {
    vol += static_cast<double>(metrics::volume(evolve::decode(rep.ga.population[k])));
    acv += rep.ga.scores[k].acv;
  }
  rep.population_mean_volume = vol / static_cast<double>(rep.ga.population.size());
  rep.population_mean_acv = acv / static_cast<double>(rep.ga.population.size());
  rep.coverage = metrics::coverage_percentages(rep.final_biclusters, matrix.rows(), matrix.cols());
  return rep;
}

std::vector<StageSummary> comparison_rows(const RunReport& report) {
  return {report.seed_summary, report.greedy_summary, report.ga_summary};
}

namespace {

void ensure_writable(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error("cannot create output directory '" + dir.string() + "': " + ec.message());
  const fs::path probe = dir / ".clickbic-write-test";
  {
    std::ofstream out(probe);
    if (!out) throw Error("output directory '" + dir.string() + "' is not writable");
  }
  fs::remove(probe, ec);
}

std::string recovery_csv(const RunReport& rep) {
  std::string out =
      "truth,rows,cols,seeds_best_jaccard,greedy_best_jaccard,ga_best_jaccard,"
      "reported_best_jaccard\n";
  for (std::size_t t = 0; t < rep.truth.size(); ++t) {
    out += std::to_string(t) + "," + std::to_string(rep.truth[t].rows.size()) + "," +
           std::to_string(rep.truth[t].cols.size()) + "," +
           io::format_double(rep.seed_recovery->best[t]) + "," +
           io::format_double(rep.greedy_recovery->best[t]) + "," +
           io::format_double(rep.ga_recovery->best[t]) + "," +
           io::format_double(rep.reported_recovery->best[t]) + "\n";
  }
  out += "mean,,," + io::format_double(rep.seed_recovery->mean) + "," +
         io::format_double(rep.greedy_recovery->mean) + "," +
         io::format_double(rep.ga_recovery->mean) + "," +
         io::format_double(rep.reported_recovery->mean) + "\n";
  return out;
}

std::string fixed(double v, int digits = 4) {
  std::ostringstream os;
  os.setf(std::ios::fixed);
  os.precision(digits);
  os << v;
  return os.str();
}

}  // namespace

std::string comparison_to_csv(const std::vector<StageSummary>& rows) {
  std::string out = "method,count,avg_volume,avg_acv,overlap_degree,overlap_unclamped\n";
  for (const auto& r : rows)
    out += r.method + "," + std::to_string(r.count) + "," + io::format_double(r.avg_volume) + "," +
           io::format_double(r.avg_acv) + "," + io::format_double(r.overlap) + "," +
           io::format_double(r.overlap_unclamped) + "\n";
  return out;
}

std::string summary_text(const RunReport& rep, const PipelineConfig& cfg) {
  std::ostringstream os;
  os << "clickbic run summary\n\n";
  os << "input: " << cfg.input.filename().string() << " (" << format_name(cfg.format) << ")\n";
  if (cfg.format == InputFormat::msnbc) {
    os << "sessions read: " << rep.input.sessions_read << ", mean length "
       << fixed(rep.input.mean_length_all, 2) << "\n";
    os << "sessions kept (length " << cfg.min_len << ".." << cfg.max_len
       << "): " << rep.input.sessions_kept << ", mean length "
       << fixed(rep.input.mean_length_kept, 2) << "\n";
  }
  os << "access matrix: " << rep.input.rows << " users x " << rep.input.cols << " pages\n";
  os << "seed: " << cfg.seed << " (k-means " << rep.seeding_seed << ", GA " << rep.ga_seed
     << ")\n\n";

  os << "[greedy growth]\n";
  os << "                      seeds      grown\n";
  os << "count        " << std::setw(10) << rep.seed_summary.count << " " << std::setw(10)
     << rep.greedy_summary.count << "\n";
  os << "average ACV  " << std::setw(10) << fixed(rep.seed_summary.avg_acv) << " " << std::setw(10)
     << fixed(rep.greedy_summary.avg_acv) << "\n";
  os << "avg volume   " << std::setw(10) << fixed(rep.seed_summary.avg_volume, 1) << " "
     << std::setw(10) << fixed(rep.greedy_summary.avg_volume, 1) << "\n\n";

  if (!rep.trace.empty()) {
    os << "[stage trace]\n";
    for (const auto& r : rep.trace)
      os << std::left << std::setw(18) << greedy::stage_name(r.stage) << std::right
         << " acv " << fixed(r.avg_acv) << "  volume " << fixed(r.avg_volume, 1) << "\n";
    os << "\n";
  }

  os << "[genetic algorithm]\n";
  os << "population " << cfg.ga.population_size << ", generations " << cfg.ga.generations
     << ", cp " << cfg.ga.crossover_fraction << ", mp " << cfg.ga.mutation_probability
     << ", delta " << fixed(rep.ga.delta) << ", elitism " << cfg.ga.elitism << "\n";
  os << "best: " << rep.ga.best.rows.size() << " x " << rep.ga.best.cols.size() << ", volume "
     << metrics::volume(rep.ga.best) << ", ACV " << fixed(rep.ga.best_score.acv) << "\n";
  os << "distinct fit biclusters: " << rep.final_biclusters.size() << "\n";
  os << "mean volume " << fixed(rep.ga_summary.avg_volume, 1) << ", mean ACV "
     << fixed(rep.ga_summary.avg_acv) << " (population-wide: " << fixed(rep.population_mean_volume, 1)
     << ", " << fixed(rep.population_mean_acv) << ")\n";
  os << "row coverage " << fixed(rep.coverage.row_percent, 2) << "%, column coverage "
     << fixed(rep.coverage.col_percent, 2) << "%\n";
  os << "overlap degree " << fixed(rep.ga_summary.overlap) << " (unclamped "
     << fixed(rep.ga_summary.overlap_unclamped) << ")\n\n";

  os << "[method comparison]\n";
  for (const auto& r : comparison_rows(rep))
    os << std::left << std::setw(18) << r.method << std::right << " volume " << std::setw(10)
       << fixed(r.avg_volume, 1) << "  acv " << fixed(r.avg_acv) << "  overlap "
       << fixed(r.overlap) << "\n";

  if (rep.ga_recovery) {
    os << "\n[recovery of implanted biclusters]\n";
    for (std::size_t t = 0; t < rep.truth.size(); ++t)
      os << "truth " << t << " (" << rep.truth[t].rows.size() << "x" << rep.truth[t].cols.size()
         << "): seeds " << fixed(rep.seed_recovery->best[t]) << ", greedy "
         << fixed(rep.greedy_recovery->best[t]) << ", ga " << fixed(rep.ga_recovery->best[t])
         << ", any " << fixed(rep.reported_recovery->best[t]) << "\n";
  }

  os << "\nnotes:\n";
  os << "- row/column coverage: share of users/pages in at least one final bicluster.\n";
  os << "- overlap degree clamps each element's contribution at 0; the unclamped value lets\n"
        "  uncovered elements contribute -1/(N-1). Fewer than 2 biclusters report 0.\n";
  os << "- the GA keeps the top " << cfg.ga.elitism
     << " individual(s) unchanged each generation (elitism).\n";
  return os.str();
}

void write_reports(const RunReport& rep, const AccessMatrix& matrix, const PipelineConfig& cfg) {
  const fs::path& dir = cfg.out_dir;
  io::write_text(dir / "seeds.json", io::biclusters_to_json(matrix, rep.seeds));
  io::write_text(dir / "greedy.json", io::biclusters_to_json(matrix, rep.grown));
  io::write_text(dir / "final.json", io::biclusters_to_json(matrix, rep.final_biclusters));
  io::write_text(dir / "stage_trace.csv", io::stage_trace_to_csv(rep.trace));
  io::write_text(dir / "ga_history.csv", io::ga_history_to_csv(rep.ga.history));
  io::write_text(dir / "comparison.csv", comparison_to_csv(comparison_rows(rep)));
  io::write_text(dir / "summary.txt", summary_text(rep, cfg));
  if (rep.ga_recovery) io::write_text(dir / "recovery.csv", recovery_csv(rep));
}

RunReport run_pipeline(const PipelineConfig& cfg) {
  cfg.validate();
  ensure_writable(cfg.out_dir);
  LoadedInput in = load_input(cfg);
  RunReport rep = analyze(in.matrix, cfg);
  rep.input = in.summary;
  if (!in.truth.empty()) {
    rep.truth = in.truth;
    rep.seed_recovery = synth::score_recovery(rep.seeds, rep.truth);
    rep.greedy_recovery = synth::score_recovery(rep.grown, rep.truth);
    rep.ga_recovery = synth::score_recovery(rep.final_biclusters, rep.truth);
    std::vector<Bicluster> all = rep.grown;
    all.insert(all.end(), rep.final_biclusters.begin(), rep.final_biclusters.end());
    rep.reported_recovery = synth::score_recovery(all, rep.truth);
  }
  write_reports(rep, in.matrix, cfg);
  return rep;
}

std::vector<StageSummary> compare_methods(const PipelineConfig& cfg) {
  return comparison_rows(run_pipeline(cfg));
}

}  // namespace clickbic::pipeline
