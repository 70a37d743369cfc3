// clickbic: coherent user x page biclusters from clickstream data.
//
//   clickbic run     --input msnbc.seq --out-dir out/
//   clickbic compare --input msnbc.seq --out-dir out/
//   clickbic synth   --rows 200 --cols 30 --implant 20x8:shift --output data.json

#include <CLI11.hpp>

#include <algorithm>
#include <iomanip>
#include <iostream>
#include <regex>

#include "clickbic/io.hpp"
#include "clickbic/pipeline.hpp"
#include "clickbic/synth.hpp"

namespace {

using namespace clickbic;

struct PipelineOptions {
  pipeline::PipelineConfig cfg;
  std::string format = "msnbc";
  std::string delta_mode = "fixed";
  std::string config_file;  // consumed by splice_config before parsing
};

void add_pipeline_options(CLI::App* app, PipelineOptions& o) {
  auto& c = o.cfg;
  app->add_option("--config", o.config_file,
                  "Key-value config file (key = value, keys are flag names); flags on the "
                  "command line take precedence");
  app->add_option("--input", c.input, "Input file (plain or gzip)")->required();
  app->add_option("--format", o.format, "msnbc | matrix-csv | synthetic-json")
      ->check(CLI::IsMember({"msnbc", "matrix-csv", "synthetic-json"}))
      ->capture_default_str();
  app->add_option("--min-len", c.min_len, "Shortest session kept (msnbc)")->capture_default_str();
  app->add_option("--max-len", c.max_len, "Longest session kept (msnbc)")->capture_default_str();
  app->add_option("--ku", c.seeding.k_users, "User clusters")->capture_default_str();
  app->add_option("--kp", c.seeding.k_pages, "Page clusters")->capture_default_str();
  app->add_option("--kmeans-restarts", c.seeding.kmeans.restarts)->capture_default_str();
  app->add_option("--kmeans-iterations", c.seeding.kmeans.max_iterations)->capture_default_str();
  app->add_flag("--normalize-rows", c.seeding.normalize_rows,
                "Cluster users on visit proportions instead of raw counts");
  app->add_flag("--skip-greedy{false}", c.run_greedy, "Feed seeds straight to the GA");
  app->add_flag("--single-pass", [&c](std::int64_t) { c.greedy.converge = false; },
                "Run each greedy stage once instead of repeating until no move improves");
  app->add_flag("--strict-growth", [&c](std::int64_t) { c.greedy.accept_insertion_ties = false; },
                "Only accept greedy insertions that strictly raise ACV");
  app->add_option("--pop-size", c.ga.population_size)->capture_default_str();
  app->add_option("--generations", c.ga.generations)->capture_default_str();
  app->add_option("--cp", c.ga.crossover_fraction, "Fraction of slots filled by crossover")
      ->capture_default_str();
  app->add_option("--mp", c.ga.mutation_probability, "Per-bit mutation probability")
      ->capture_default_str();
  app->add_option("--delta", c.ga.delta, "ACV threshold for nonzero fitness")->capture_default_str();
  app->add_option("--delta-mode", o.delta_mode, "fixed | max-initial")
      ->check(CLI::IsMember({"fixed", "max-initial"}))
      ->capture_default_str();
  app->add_option("--elitism", c.ga.elitism)->capture_default_str();
  app->add_option("--seed", c.seed, "Top-level RNG seed")->capture_default_str();
  app->add_option("--out-dir", c.out_dir)->capture_default_str();
}

pipeline::PipelineConfig finish(PipelineOptions& o) {
  o.cfg.format = pipeline::parse_format(o.format);
  o.cfg.ga.delta_mode =
      o.delta_mode == "fixed" ? evolve::DeltaMode::fixed : evolve::DeltaMode::max_initial_acv;
  return o.cfg;
}

// ROWSxCOLS:MODEL[-int][@ROW,COL]; "-int" draws integer scale factors
synth::ImplantSpec parse_implant(const std::string& text) {
  static const std::regex re(R"((\d+)x(\d+):([a-z-]+?)(-int)?(?:@(\d+),(\d+))?)");
  std::smatch m;
  if (!std::regex_match(text, m, re))
    throw Error("bad --implant '" + text + "', expected ROWSxCOLS:MODEL[-int][@ROW,COL]");
  synth::ImplantSpec s;
  s.rows = std::stoul(m[1]);
  s.cols = std::stoul(m[2]);
  s.model = synth::parse_coherence(m[3].str());
  s.integer_scale = m[4].matched;
  if (m[5].matched) {
    s.row_offset = std::stoul(m[5]);
    s.col_offset = std::stoul(m[6]);
  }
  return s;
}

// CLI11 only reads config files for the top-level app, so a subcommand's
// --config file is expanded into --key=value tokens placed right after the
// subcommand name. Later command-line tokens then override them.
std::vector<std::string> splice_config(std::vector<std::string> args) {
  for (std::size_t k = 1; k + 1 < args.size(); ++k) {
    std::string file;
    std::size_t erase = 0;
    if (args[k] == "--config") {
      file = args[k + 1];
      erase = 2;
    } else if (args[k].rfind("--config=", 0) == 0) {
      file = args[k].substr(9);
      erase = 1;
    } else {
      continue;
    }
    args.erase(args.begin() + static_cast<std::ptrdiff_t>(k),
               args.begin() + static_cast<std::ptrdiff_t>(k + erase));
    std::vector<std::string> tokens;
    for (const auto& item : CLI::ConfigINI().from_file(file)) {
      std::string value;
      for (const auto& in : item.inputs) value += (value.empty() ? "" : ",") + in;
      tokens.push_back("--" + item.name + "=" + value);
    }
    args.insert(args.begin() + 2, tokens.begin(), tokens.end());
    break;
  }
  return args;
}

void print_comparison(const std::vector<pipeline::StageSummary>& rows) {
  std::cout << std::left << std::setw(20) << "method" << std::right << std::setw(8) << "count"
            << std::setw(14) << "avg_volume" << std::setw(10) << "avg_acv" << std::setw(10)
            << "overlap" << "\n";
  std::cout << std::fixed;
  for (const auto& r : rows)
    std::cout << std::left << std::setw(20) << r.method << std::right << std::setw(8) << r.count
              << std::setw(14) << std::setprecision(1) << r.avg_volume << std::setw(10)
              << std::setprecision(4) << r.avg_acv << std::setw(10) << r.overlap << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Coherent biclustering of clickstream access matrices"};
  app.name("clickbic");
  app.require_subcommand(1);
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

  PipelineOptions run_opts;
  auto* run = app.add_subcommand("run", "Seed, grow and evolve biclusters; write all reports");
  add_pipeline_options(run, run_opts);

  PipelineOptions cmp_opts;
  auto* cmp = app.add_subcommand("compare", "Run the pipeline and print the per-stage comparison");
  add_pipeline_options(cmp, cmp_opts);

  synth::SynthConfig syn;
  std::vector<std::string> implants;
  std::string synth_out;
  auto* gen = app.add_subcommand("synth", "Write a synthetic matrix with implanted biclusters");
  gen->add_option("--rows", syn.rows)->capture_default_str();
  gen->add_option("--cols", syn.cols)->capture_default_str();
  gen->add_option("--noise-min", syn.noise_min)->capture_default_str();
  gen->add_option("--noise-max", syn.noise_max)->capture_default_str();
  gen->add_option("--implant", implants, "ROWSxCOLS:shift|scale|shift-scale[-int][@ROW,COL]");
  gen->add_option("--seed", syn.seed)->capture_default_str();
  gen->add_option("--output", synth_out, "Destination JSON file")->required();

  std::vector<std::string> args(argv, argv + argc);
  try {
    args = splice_config(std::move(args));
    args.erase(args.begin());
    std::reverse(args.begin(), args.end());  // CLI11 consumes arguments from the back
    app.parse(std::move(args));
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "clickbic: " << e.what() << "\n";
    return 1;
  }

  try {
    if (run->parsed()) {
      auto cfg = finish(run_opts);
      auto rep = pipeline::run_pipeline(cfg);
      print_comparison(pipeline::comparison_rows(rep));
      std::cout << "reports written to " << cfg.out_dir.string() << "\n";
    } else if (cmp->parsed()) {
      print_comparison(pipeline::compare_methods(finish(cmp_opts)));
    } else if (gen->parsed()) {
      for (const auto& s : implants) syn.implants.push_back(parse_implant(s));
      io::write_text(synth_out, io::synthetic_to_json(synth::generate(syn)));
    }
  } catch (const std::exception& e) {
    std::cerr << "clickbic: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
