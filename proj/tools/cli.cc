/* Copyright 2026 The Palate Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/


#include "cli.h"

#include <algorithm>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "palate/embedding_io.h"
#include "palate/errors.h"
#include "palate/experiments.h"
#include "palate/metrics.h"
#include "palate/parallel.h"
#include "palate/version.h"

namespace palate::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct CommonKernelFlags {
  double sigma = kRealEmbeddingSigma;
  std::size_t block_size = kDefaultBlockSize;
  std::string reduction = "pairwise";
  int threads = 0;

  void Register(CLI::App* app) {
    app->add_option("--sigma", sigma, "RBF kernel bandwidth")
        ->capture_default_str();
    app->add_option("--block-size", block_size, "rows per kernel block")
        ->capture_default_str();
    app->add_option("--reduction", reduction, "pairwise | fixed_order")
        ->check(CLI::IsMember({"pairwise", "fixed_order"}))
        ->capture_default_str();
    app->add_option("--threads", threads,
                    "worker cap (0: PALATE_THREADS or all cores)")
        ->capture_default_str();
  }

  KernelConfig Resolve() const {
    KernelConfig k;
    k.sigma = sigma;
    k.block_size = block_size;
    k.reduction = *ParseReduction(reduction);
    k.threads = ResolveThreadCount(threads);
    k.Validate();
    return k;
  }
};

json KernelJson(const KernelConfig& k) {
  return {{"sigma", k.sigma},
          {"block_size", k.block_size},
          {"reduction", std::string(ReductionName(k.reduction))},
          {"threads", k.threads}};
}

void PrintConfig(std::ostream& out, const std::string& command,
                 const json& config) {
  out << "palate " << kToolVersion << " " << command << "\n"
      << "config: " << config.dump() << "\n";
}

void WriteText(const fs::path& path, const std::string& text) {
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw DataError("cannot open " + path.string() + " for writing");
  file << text;
  if (!file) throw DataError("write failed on " + path.string());
}

std::vector<int> LoadLabels(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open label file " + path.string());
  std::vector<int> labels;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    line.erase(0, line.find_first_not_of(" \t\r"));
    line.erase(line.find_last_not_of(" \t\r") + 1);
    if (line.empty()) continue;
    int value = 0;
    auto [ptr, ec] = std::from_chars(line.data(), line.data() + line.size(), value);
    if (ec != std::errc() || ptr != line.data() + line.size()) {
      throw DataError("bad label '" + line + "' at line " +
                      std::to_string(line_no) + " of " + path.string());
    }
    labels.push_back(value);
  }
  return labels;
}

std::vector<std::size_t> ParseSizes(const std::string& text) {
  std::vector<std::size_t> sizes;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    std::size_t v = 0;
    auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
    if (ec != std::errc() || ptr != item.data() + item.size() || v == 0) {
      throw InvalidArgumentError("bad size '" + item + "' in --sizes");
    }
    sizes.push_back(v);
  }
  if (sizes.empty()) throw InvalidArgumentError("--sizes is empty");
  return sizes;
}

void EmitTable(const ExperimentTable& table, const std::string& command,
               const json& config, const fs::path& out_path,
               const std::string& svg_path, bool log_x, std::ostream& out) {
  ExperimentTable copy = table;
  copy.metadata()["command"] = command;
  copy.metadata()["config"] = config;
  copy.metadata()["tool_version"] = kToolVersion;
  out << copy.ToCsv();
  if (!out_path.empty()) {
    copy.Write(out_path);
    if (out_path.extension() == ".csv") {
      // CSV carries no metadata; keep it alongside.
      WriteText(fs::path(out_path).replace_extension(".meta.json"),
                copy.metadata().dump(2) + "\n");
    }
    out << "wrote " << out_path.string() << "\n";
  }
  if (!svg_path.empty()) {
    SvgOptions svg;
    svg.log_x = log_x;
    copy.Write(svg_path, svg);
    out << "wrote " << svg_path << "\n";
  }
}

// ---------------------------------------------------------------- compute

struct ComputeFlags {
  std::string train, test, gen, out, format = "json";
  double alpha = kDefaultAlpha;
  std::optional<double> test_fraction;
  bool def1 = false;
  CommonKernelFlags kernel;
};

int RunCompute(const ComputeFlags& f, std::ostream& out) {
  const KernelConfig kernel = f.kernel.Resolve();
  ValidateAlpha(f.alpha);
  if (f.test_fraction) ValidateTestFraction(*f.test_fraction);

  const EvalTriple triple = ValidateTriple(
      LoadEmbeddings(f.train), LoadEmbeddings(f.test), LoadEmbeddings(f.gen));
  const SampleSizes s = triple.sizes();
  const double a = f.test_fraction ? *f.test_fraction : TestFraction(s.m, s.n);

  json config = {{"train", f.train},
                 {"test", f.test},
                 {"gen", f.gen},
                 {"kernel", KernelJson(kernel)},
                 {"alpha", f.alpha},
                 {"a", a},
                 {"a_source", f.test_fraction ? "flag" : "n/(m+n)"},
                 {"sample_sizes", {s.m, s.n, s.k}},
                 {"dim", triple.dim()},
                 {"data_copying_indicator", f.def1}};
  PrintConfig(out, "compute", config);

  ReportOptions options;
  options.alpha = f.alpha;
  options.a = a;
  options.with_data_copying_indicator = f.def1;
  const MetricReport report = ComputeReport(triple, kernel, options);

  json j = ReportToJson(report);
  out << "mmd2(test, gen)   " << report.mmd2_test_gen << "\n"
      << "mmd2(train, gen)  " << report.mmd2_train_gen << "\n"
      << "SCALE             " << report.scale_score << "\n"
      << "PALATE            " << report.palate_score << "\n"
      << "M_PALATE          " << report.m_palate_score << "\n"
      << "data-copying (relative to test): "
      << (report.data_copying_relative ? "yes" : "no") << "\n";
  if (report.data_copying_indicator) {
    out << "data-copying indicator: " << *report.data_copying_indicator
        << (IsDataCopying(*report.data_copying_indicator) ? " (copying)" : "")
        << "\n";
  }
  if (report.degenerate_denominator) {
    out << "warning: both MMD^2 terms are zero; PALATE set to a\n";
  }

  if (!f.out.empty()) {
    if (f.format == "csv") {
      WriteText(f.out, ReportToCsv(report));
    } else {
      j["config"] = config;
      WriteText(f.out, j.dump(2) + "\n");
    }
    out << "wrote " << f.out << "\n";
  }
  return kSuccess;
}

// -------------------------------------------------------------- synthetic

struct SyntheticFlags {
  double side = 3.0;
  std::size_t samples = 2000;
  double split = 0.5;
  double grid_min = 1e-4, grid_max = 1e2;
  std::size_t grid_points = 25;
  std::size_t gen_count = 1000;
  std::size_t runs = 100;
  std::uint64_t seed = 0;
  double alpha = kDefaultAlpha;
  std::string out, svg;
  CommonKernelFlags kernel{.sigma = kSyntheticSigma};
};

int RunSynthetic(const SyntheticFlags& f, std::ostream& out) {
  SweepConfig config;
  config.synth.side = f.side;
  config.synth.total_samples = f.samples;
  config.synth.split_ratio = f.split;
  config.synth.seed = f.seed;
  config.bandwidth_grid = LogSpace(f.grid_min, f.grid_max, f.grid_points);
  config.generated_per_run = f.gen_count;
  config.runs = f.runs;
  config.kernel = f.kernel.Resolve();
  config.alpha = f.alpha;
  config.Validate();

  const json resolved = {{"side", f.side},
                         {"samples", f.samples},
                         {"split", f.split},
                         {"grid_min", f.grid_min},
                         {"grid_max", f.grid_max},
                         {"grid_points", f.grid_points},
                         {"gen_count", f.gen_count},
                         {"runs", f.runs},
                         {"seed", f.seed},
                         {"alpha", f.alpha},
                         {"kernel", KernelJson(config.kernel)}};
  PrintConfig(out, "synthetic", resolved);
  EmitTable(SyntheticSweep(config), "synthetic", resolved, f.out, f.svg,
            /*log_x=*/true, out);
  return kSuccess;
}

// -------------------------------------------------------------------- mix

struct MixFlags {
  std::string train, test, gen, out, svg;
  std::size_t steps = 11;
  std::uint64_t seed = 0;
  double alpha = kDefaultAlpha;
  CommonKernelFlags kernel;
};

int RunMix(const MixFlags& f, std::ostream& out) {
  const KernelConfig kernel = f.kernel.Resolve();
  ValidateAlpha(f.alpha);
  if (f.steps < 2) throw InvalidArgumentError("--steps must be at least 2");
  const EvalTriple triple = ValidateTriple(
      LoadEmbeddings(f.train), LoadEmbeddings(f.test), LoadEmbeddings(f.gen));
  const SampleSizes s = triple.sizes();
  const json resolved = {{"train", f.train},
                         {"test", f.test},
                         {"gen", f.gen},
                         {"steps", f.steps},
                         {"seed", f.seed},
                         {"alpha", f.alpha},
                         {"a", TestFraction(s.m, s.n)},
                         {"kernel", KernelJson(kernel)}};
  PrintConfig(out, "mix", resolved);
  EmitTable(MixingCurve(triple, LinSpace(0.0, 1.0, f.steps), kernel, f.alpha,
                        f.seed),
            "mix", resolved, f.out, f.svg, /*log_x=*/false, out);
  return kSuccess;
}

// -------------------------------------------------------------- diversity

struct DiversityFlags {
  std::string data, labels, train, test, out, svg;
  std::string mode = "classes";
  std::size_t budget = 0;
  std::uint64_t seed = 0;
  double alpha = kDefaultAlpha;
  CommonKernelFlags kernel;
};

int RunDiversity(const DiversityFlags& f, std::ostream& out) {
  DiversityConfig config;
  config.mode = f.mode == "classes" ? DiversityMode::kClassCount
                                    : DiversityMode::kUniquePerClass;
  config.budget = f.budget;
  config.kernel = f.kernel.Resolve();
  config.alpha = f.alpha;
  config.seed = f.seed;
  ValidateAlpha(f.alpha);

  LabeledData pool{LoadEmbeddings(f.data), LoadLabels(f.labels)};
  const EmbeddingMatrix train = LoadEmbeddings(f.train);
  const EmbeddingMatrix test = LoadEmbeddings(f.test);
  const json resolved = {{"data", f.data},
                         {"labels", f.labels},
                         {"train", f.train},
                         {"test", f.test},
                         {"mode", f.mode},
                         {"budget", f.budget},
                         {"seed", f.seed},
                         {"alpha", f.alpha},
                         {"a", TestFraction(train.rows(), test.rows())},
                         {"kernel", KernelJson(config.kernel)}};
  PrintConfig(out, "diversity", resolved);
  EmitTable(DiversityCurve(pool, train, test, config), "diversity", resolved,
            f.out, f.svg, /*log_x=*/f.mode == "unique", out);
  return kSuccess;
}

// ------------------------------------------------------------------ bench

struct BenchFlags {
  std::string sizes = "1000,2000,4000";
  std::size_t dim = 64;
  std::size_t repeats = 3;
  std::uint64_t seed = 0;
  std::string out;
  CommonKernelFlags kernel;
};

int RunBench(const BenchFlags& f, std::ostream& out) {
  const KernelConfig kernel = f.kernel.Resolve();
  const auto sizes = ParseSizes(f.sizes);
  const json resolved = {{"sizes", sizes},
                         {"dim", f.dim},
                         {"repeats", f.repeats},
                         {"seed", f.seed},
                         {"kernel", KernelJson(kernel)}};
  PrintConfig(out, "bench", resolved);
  EmitTable(BenchScaling(sizes, f.dim, kernel, f.repeats, f.seed), "bench",
            resolved, f.out, "", false, out);
  return kSuccess;
}

// ---------------------------------------------------------------- convert

struct ConvertFlags {
  std::string in, out, to = "emb1", from, dtype = "f64";
};

int RunConvert(const ConvertFlags& f, std::ostream& out) {
  std::optional<EmbeddingFormat> hint;
  if (!f.from.empty()) hint = ParseEmbeddingFormat(f.from);
  const json resolved = {{"in", f.in},
                         {"out", f.out},
                         {"to", f.to},
                         {"from", f.from.empty() ? "sniffed" : f.from},
                         {"dtype", f.dtype}};
  PrintConfig(out, "convert", resolved);
  const EmbeddingMatrix m = LoadEmbeddings(f.in, hint);
  SaveEmbeddings(m, f.out, *ParseEmbeddingFormat(f.to),
                 f.dtype == "f32" ? Emb1Dtype::kFloat32 : Emb1Dtype::kFloat64);
  out << "converted " << m.rows() << "x" << m.cols() << " matrix to "
      << f.out << "\n";
  return kSuccess;
}

}  // namespace

int Run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Kernel two-sample evaluation of generative models "
               "(MMD^2, SCALE, PALATE, M_PALATE) over embedding files."};
  app.name("palate");
  app.set_version_flag("--version", std::string(kToolVersion));
  app.require_subcommand(1);

  ComputeFlags compute;
  auto* c = app.add_subcommand("compute", "score one train/test/generated triple");
  c->add_option("--train", compute.train, "train embeddings")->required();
  c->add_option("--test", compute.test, "test embeddings")->required();
  c->add_option("--gen", compute.gen, "generated embeddings")->required();
  c->add_option("--alpha", compute.alpha, "SCALE weight in M_PALATE")
      ->capture_default_str();
  c->add_option("--test-fraction", compute.test_fraction,
                "override a (default n/(m+n))");
  c->add_option("--out", compute.out, "report path");
  c->add_option("--format", compute.format, "json | csv")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();
  c->add_flag("--def1", compute.def1,
              "also compute the nearest-train-distance data-copying indicator");
  compute.kernel.Register(c);

  SyntheticFlags synthetic;
  auto* s = app.add_subcommand("synthetic", "KDE bandwidth sweep on 2-D mixture");
  s->add_option("--side", synthetic.side)->capture_default_str();
  s->add_option("--samples", synthetic.samples)->capture_default_str();
  s->add_option("--split", synthetic.split, "train share")->capture_default_str();
  s->add_option("--grid-min", synthetic.grid_min)->capture_default_str();
  s->add_option("--grid-max", synthetic.grid_max)->capture_default_str();
  s->add_option("--grid-points", synthetic.grid_points)->capture_default_str();
  s->add_option("--gen-count", synthetic.gen_count)->capture_default_str();
  s->add_option("--runs", synthetic.runs)->capture_default_str();
  s->add_option("--seed", synthetic.seed)->capture_default_str();
  s->add_option("--alpha", synthetic.alpha)->capture_default_str();
  s->add_option("--out", synthetic.out, "table path (.json or .csv)");
  s->add_option("--svg", synthetic.svg, "line chart path");
  synthetic.kernel.Register(s);

  MixFlags mix;
  auto* m = app.add_subcommand("mix", "replace generated rows by train rows");
  m->add_option("--train", mix.train)->required();
  m->add_option("--test", mix.test)->required();
  m->add_option("--gen", mix.gen)->required();
  m->add_option("--steps", mix.steps, "fractions 0..1 inclusive")
      ->capture_default_str();
  m->add_option("--seed", mix.seed)->capture_default_str();
  m->add_option("--alpha", mix.alpha)->capture_default_str();
  m->add_option("--out", mix.out);
  m->add_option("--svg", mix.svg);
  mix.kernel.Register(m);

  DiversityFlags diversity;
  auto* d = app.add_subcommand("diversity", "class-count / unique-sample curves");
  d->add_option("--data", diversity.data, "labeled pool embeddings")->required();
  d->add_option("--labels", diversity.labels, "one integer label per line")
      ->required();
  d->add_option("--train", diversity.train)->required();
  d->add_option("--test", diversity.test)->required();
  d->add_option("--mode", diversity.mode, "classes | unique")
      ->check(CLI::IsMember({"classes", "unique"}))
      ->capture_default_str();
  d->add_option("--budget", diversity.budget, "generated rows (0: pool size)")
      ->capture_default_str();
  d->add_option("--seed", diversity.seed)->capture_default_str();
  d->add_option("--alpha", diversity.alpha)->capture_default_str();
  d->add_option("--out", diversity.out);
  d->add_option("--svg", diversity.svg);
  diversity.kernel.Register(d);

  BenchFlags bench;
  auto* b = app.add_subcommand("bench", "time compute_report on random data");
  b->add_option("--sizes", bench.sizes, "comma-separated sample counts")
      ->capture_default_str();
  b->add_option("--dim", bench.dim)->capture_default_str();
  b->add_option("--repeats", bench.repeats)->capture_default_str();
  b->add_option("--seed", bench.seed)->capture_default_str();
  b->add_option("--out", bench.out);
  bench.kernel.Register(b);

  ConvertFlags convert;
  auto* v = app.add_subcommand("convert", "re-encode an embedding file");
  v->add_option("--in", convert.in)->required();
  v->add_option("--out", convert.out)->required();
  v->add_option("--to", convert.to, "emb1 | csv")
      ->check(CLI::IsMember({"emb1", "csv"}))
      ->capture_default_str();
  v->add_option("--from", convert.from, "input format (default: sniff)")
      ->check(CLI::IsMember({"emb1", "npy", "csv"}));
  v->add_option("--dtype", convert.dtype, "emb1 element type: f32 | f64")
      ->check(CLI::IsMember({"f32", "f64"}))
      ->capture_default_str();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kUsageError;
  }

  try {
    if (c->parsed()) return RunCompute(compute, out);
    if (s->parsed()) return RunSynthetic(synthetic, out);
    if (m->parsed()) return RunMix(mix, out);
    if (d->parsed()) return RunDiversity(diversity, out);
    if (b->parsed()) return RunBench(bench, out);
    if (v->parsed()) return RunConvert(convert, out);
  } catch (const InvalidArgumentError& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  } catch (const DataError& e) {
    err << "error: " << e.what() << "\n";
    return kDataError;
  } catch (const NumericError& e) {
    err << "numeric failure: " << e.what() << "\n";
    return kNumericError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kDataError;
  }
  return kUsageError;
}

}  // namespace palate::cli
