#include "hcad/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <nlohmann/json.hpp>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "hcad/cad_json.hpp"
#include "hcad/cloud_metrics.hpp"
#include "hcad/curation.hpp"
#include "hcad/mesh.hpp"
#include "hcad/topo.hpp"

namespace fs = std::filesystem;

namespace hcad::cli {

namespace {

class IoError : public Error {
 public:
  using Error::Error;
};

std::string read_text(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Writes through a temporary file so readers never see partial output.
void write_file(const fs::path& path, const std::string& data) {
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream o(tmp, std::ios::binary | std::ios::trunc);
    if (!o) throw IoError("cannot write " + path.string());
    o.write(data.data(), static_cast<std::streamsize>(data.size()));
    if (!o) throw IoError("write failed for " + path.string());
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) throw IoError("cannot move output into place at " + path.string() + ": " + ec.message());
}

/// Files named directly plus the *.json files of named directories, in sorted order.
std::vector<fs::path> collect_inputs(const std::vector<std::string>& args) {
  std::vector<fs::path> files;
  for (const auto& a : args) {
    const fs::path p(a);
    std::error_code ec;
    if (fs::is_directory(p, ec)) {
      std::vector<fs::path> found;
      for (const auto& e : fs::directory_iterator(p)) {
        if (e.is_regular_file() && e.path().extension() == ".json") found.push_back(e.path());
      }
      std::sort(found.begin(), found.end());
      files.insert(files.end(), found.begin(), found.end());
    } else if (fs::is_regular_file(p, ec)) {
      files.push_back(p);
    } else {
      throw IoError("no such file or directory: " + a);
    }
  }
  return files;
}

std::array<double, 3> parse_ratios(const std::string& text) {
  std::array<double, 3> r{};
  std::stringstream ss(text);
  std::string item;
  std::size_t k = 0;
  while (std::getline(ss, item, ',')) {
    if (k == 3) throw ConfigError("--ratios takes three comma-separated values");
    try {
      std::size_t used = 0;
      r[k] = std::stod(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ConfigError("bad ratio '" + item + "'");
    }
    ++k;
  }
  if (k != 3) throw ConfigError("--ratios takes three comma-separated values");
  return r;
}

struct Flags {
  std::optional<double> tolerance;
  std::optional<std::size_t> points;
  std::optional<std::uint64_t> seed;
  std::optional<int> grid;
  std::optional<double> epsilon;
  std::optional<std::string> ratios;
  std::optional<int> jobs;
  std::optional<std::string> config;
  std::string format;
  std::string output;
};

RunConfig resolve(const Flags& f, std::ostream& err) {
  RunConfig c;
  std::string path;
  if (f.config) {
    path = *f.config;
  } else if (const char* env = std::getenv(kConfigEnv); env && *env) {
    path = env;
  }
  if (!path.empty()) {
    c = load_config(path);
    err << "config: " << path << "\n";
  }
  if (f.tolerance) c.chord_tolerance = *f.tolerance;
  if (f.points) c.n_points = *f.points;
  if (f.seed) c.seed = *f.seed;
  if (f.grid) c.jsd_grid = *f.grid;
  if (f.epsilon) c.epsilon = *f.epsilon;
  if (f.ratios) c.ratios = parse_ratios(*f.ratios);
  if (f.jobs) c.jobs = *f.jobs;
  check_config(c);
#ifdef _OPENMP
  if (c.jobs > 0) omp_set_num_threads(c.jobs);
#endif
  return c;
}

void emit(std::ostream& out, const Flags& f, const std::string& data) {
  if (f.output.empty()) {
    out.write(data.data(), static_cast<std::streamsize>(data.size()));
  } else {
    write_file(f.output, data);
  }
}

// --- subcommands ----------------------------------------------------------------

int cmd_validate(const std::vector<std::string>& inputs, const RunConfig& c, const Flags& f, std::ostream& out,
                 std::ostream& err) {
  const auto files = collect_inputs(inputs);
  if (files.empty()) throw IoError("no input documents");
  std::vector<std::string> texts;
  for (const auto& p : files) texts.push_back(read_text(p));
  std::vector<ValidityReport> reports(files.size());
  const long n = static_cast<long>(files.size());
#pragma omp parallel for schedule(dynamic)
  for (long i = 0; i < n; ++i) reports[i] = validate_document(texts[i], c.chord_tolerance);

  std::string body;
  std::size_t invalid = 0;
  for (std::size_t i = 0; i < files.size(); ++i) {
    auto j = nlohmann::ordered_json::parse(report_to_json(reports[i]));
    nlohmann::ordered_json line;
    line["file"] = files[i].string();
    for (auto& [k, v] : j.items()) line[k] = v;
    body += line.dump() + "\n";
    if (!reports[i].valid()) {
      ++invalid;
      err << files[i].string() << ": invalid (" << reports[i].violations.front().message << ")\n";
    }
  }
  nlohmann::ordered_json summary;
  summary["files"] = files.size();
  summary["invalid"] = invalid;
  summary["ir"] = invalidity_ratio(reports);
  body += summary.dump() + "\n";
  emit(out, f, body);
  return invalid == 0 ? kSuccess : kFailure;
}

// Parses and checks one document; on failure prints the report and returns nullopt.
std::optional<SolidDocument> load_valid(const std::string& file, const RunConfig& c, std::ostream& out,
                                        std::ostream& err) {
  const std::string text = read_text(file);
  const ValidityReport report = validate_document(text, c.chord_tolerance);
  for (const auto& w : report.warnings) err << file << ": " << w << "\n";
  if (!report.valid()) {
    out << report_to_json(report) << "\n";
    err << file << ": invalid document\n";
    return std::nullopt;
  }
  return parse_document(text);
}

TriMesh mesh_or_report(const SolidDocument& doc, const RunConfig& c, std::ostream& err) {
  try {
    return tessellate_document(doc, c.chord_tolerance);
  } catch (const DocumentTessellationError& e) {
    err << "failing faces:";
    for (int face : e.failing_faces()) err << ' ' << face;
    err << "\n";
    throw;
  }
}

int cmd_tessellate(const std::string& input, const RunConfig& c, const Flags& f, std::ostream& out, std::ostream& err) {
  const auto doc = load_valid(input, c, out, err);
  if (!doc) return kFailure;
  const TriMesh mesh = mesh_or_report(*doc, c, err);
  const std::string format = f.format.empty() ? "obj" : f.format;
  MeshFormat fmt;
  if (format == "obj") {
    fmt = MeshFormat::obj;
  } else if (format == "stl") {
    fmt = MeshFormat::stl_binary;
  } else {
    throw ConfigError("--format must be obj or stl for tessellate");
  }
  err << "faces " << doc->faces.size() << ", vertices " << mesh.vertices.size() << ", triangles "
      << mesh.triangles.size() << " (welded)\n";
  emit(out, f, export_mesh(mesh, fmt));
  return kSuccess;
}

int cmd_sample(const std::string& input, const RunConfig& c, const Flags& f, std::ostream& out, std::ostream& err) {
  const auto doc = load_valid(input, c, out, err);
  if (!doc) return kFailure;
  const PointCloud cloud = sample_points(mesh_or_report(*doc, c, err), c.n_points, c.seed);
  const std::string format = f.format.empty() ? "xyz" : f.format;
  if (format == "xyz") {
    emit(out, f, export_xyz(cloud));
  } else if (format == "ply") {
    emit(out, f, export_ply(cloud));
  } else {
    throw ConfigError("--format must be xyz or ply for sample");
  }
  err << "sampled " << cloud.size() << " points (seed " << c.seed << ")\n";
  return kSuccess;
}

int cmd_metrics(const std::string& generated, const std::string& reference, const std::string& pairs_file,
                const RunConfig& c, const Flags& f, std::ostream& out, std::ostream& err) {
  std::vector<std::pair<fs::path, fs::path>> matched;
  if (!pairs_file.empty()) {
    // Explicit manifest: one "generated reference" path pair per line, relative to the directories.
    std::istringstream lines(read_text(pairs_file));
    std::string g;
    std::string r;
    while (lines >> g >> r) matched.emplace_back(fs::path(generated) / g, fs::path(reference) / r);
  } else {
    std::map<std::string, fs::path> gen;
    std::map<std::string, fs::path> ref;
    for (const auto& p : collect_inputs({generated})) gen[p.stem().string()] = p;
    for (const auto& p : collect_inputs({reference})) ref[p.stem().string()] = p;
    for (const auto& [stem, path] : gen) {
      if (auto it = ref.find(stem); it != ref.end()) {
        matched.emplace_back(path, it->second);
      } else {
        err << "warning: unpaired generated file " << path.string() << " excluded\n";
      }
    }
    for (const auto& [stem, path] : ref) {
      if (!gen.count(stem)) err << "warning: unpaired reference file " << path.string() << " excluded\n";
    }
  }
  if (matched.empty()) throw IoError("no document pairs found");
  std::vector<DocumentPair> pairs;
  for (const auto& [g, r] : matched) pairs.push_back({g.stem().string(), read_text(g), read_text(r)});

  EvaluationOptions opt;
  opt.n_points = c.n_points;
  opt.seed = c.seed;
  opt.jsd_grid = c.jsd_grid;
  opt.chord_tolerance = c.chord_tolerance;
  MetricReport report;
  try {
    report = evaluate_pairs(pairs, opt);
  } catch (const Error& e) {
    err << "reference documents must be valid: " << e.what() << "\n";
    return kFailure;
  }
  err << pairs.size() << " pairs, " << report.valid_pairs << " with a valid generated document\n";
  emit(out, f, metric_report_to_json(report) + "\n");
  return kSuccess;
}

int cmd_metadata(const std::string& input, const RunConfig& c, const Flags& f, std::ostream& out, std::ostream& err) {
  const auto doc = load_valid(input, c, out, err);
  if (!doc) return kFailure;
  const MetadataRecord rec = compute_metadata(mesh_or_report(*doc, c, err));
  for (const auto& w : rec.warnings) err << "warning: " << w << "\n";
  emit(out, f, metadata_to_json(rec) + "\n");
  return kSuccess;
}

int cmd_curate(const std::string& input, std::size_t target, const std::string& stats_path, const RunConfig& c,
               const Flags& f, std::ostream& out, std::ostream& err) {
  const auto files = collect_inputs({input});
  std::vector<std::string> texts;
  for (const auto& p : files) texts.push_back(read_text(p));
  std::vector<ComplexityFeatures> features(files.size());
  std::vector<std::string> failures(files.size());
  const long n = static_cast<long>(files.size());
#pragma omp parallel for schedule(dynamic)
  for (long i = 0; i < n; ++i) {
    try {
      features[i] = extract_features(texts[i], c.chord_tolerance);
    } catch (const std::exception& e) {
      failures[i] = e.what();
    }
  }
  std::vector<ComplexityFeatures> usable;
  std::vector<std::string> ids;
  for (std::size_t i = 0; i < files.size(); ++i) {
    if (!failures[i].empty()) {
      err << "warning: skipping " << files[i].string() << ": " << failures[i] << "\n";
      continue;
    }
    usable.push_back(features[i]);
    ids.push_back(files[i].stem().string());
  }
  const CorpusStats stats = corpus_stats(usable);
  std::vector<ScoredPart> parts;
  for (std::size_t i = 0; i < usable.size(); ++i) {
    const auto s = complexity_score(usable[i], stats);
    parts.push_back({ids[i], s.w, s.tier});
  }
  TierRatios ratios{c.ratios[0], c.ratios[1], c.ratios[2]};
  const CurationResult result = curate_corpus(parts, target, ratios, c.seed);
  for (const auto& line : result.log) err << line << "\n";
  err << "selected " << result.selected.size() << " of " << parts.size() << " (simple " << result.quotas[0]
      << ", moderate " << result.quotas[1] << ", complex " << result.quotas[2] << ")\n";
  emit(out, f, manifest_jsonl(parts, result));
  if (!stats_path.empty()) write_file(stats_path, stats_to_json(stats) + "\n");
  return kSuccess;
}

int cmd_roundtrip(const std::string& input, const Flags& f, std::ostream& out, std::ostream& err) {
  const std::string text = read_text(input);
  std::vector<std::string> warnings;
  SolidDocument doc;
  try {
    doc = parse_document(text, &warnings);
  } catch (const ParseError& e) {
    ValidityReport report;
    report.violations.push_back({e.face(), e.path(), e.what()});
    out << report_to_json(report) << "\n";
    return kFailure;
  }
  for (const auto& w : warnings) err << "warning: " << w << "\n";
  const std::string canonical = serialize_document(doc);
  const auto diff = nlohmann::json::diff(nlohmann::json::parse(text), nlohmann::json::parse(canonical));
  emit(out, f, canonical);
  // With --output the diff is the JSON result on stdout; otherwise stdout carries the document.
  (f.output.empty() ? err : out) << diff.dump() << "\n";
  return kSuccess;
}

}  // namespace

RunConfig load_config(const fs::path& path, RunConfig c) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(read_text(path));
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("bad config file " + path.string() + ": " + e.what());
  }
  try {
    if (j.contains("chord_tolerance")) c.chord_tolerance = j["chord_tolerance"].get<double>();
    if (j.contains("n_points")) c.n_points = j["n_points"].get<std::size_t>();
    if (j.contains("seed")) c.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("jsd_grid")) c.jsd_grid = j["jsd_grid"].get<int>();
    if (j.contains("epsilon")) c.epsilon = j["epsilon"].get<double>();
    if (j.contains("ratios")) c.ratios = j["ratios"].get<std::array<double, 3>>();
    if (j.contains("jobs")) c.jobs = j["jobs"].get<int>();
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("bad config file " + path.string() + ": " + e.what());
  }
  return c;
}

void check_config(const RunConfig& c) {
  if (!(c.chord_tolerance > 0.0)) throw ConfigError("tolerance must be positive");
  if (!(c.epsilon > 0.0)) throw ConfigError("epsilon must be positive");
  if (c.n_points < 1) throw ConfigError("points must be at least 1");
  if (c.jsd_grid < 2) throw ConfigError("grid must be at least 2");
  if (c.jobs < 0) throw ConfigError("jobs must be non-negative");
  for (double r : c.ratios) {
    if (!(r >= 0.0)) throw ConfigError("ratios must be non-negative");
  }
  if (std::abs(c.ratios[0] + c.ratios[1] + c.ratios[2] - 1.0) > 1e-9) throw ConfigError("ratios must sum to 1");
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Hybrid NURBS/primitive CAD document toolkit"};
  app.name("hcad");
  app.require_subcommand(1);
  app.fallthrough();

  Flags f;
  app.add_option("--tolerance", f.tolerance, "Chord tolerance relative to the 2x2x2 box");
  app.add_option("--points", f.points, "Points sampled per shape");
  app.add_option("--seed", f.seed, "Sampling seed");
  app.add_option("--grid", f.grid, "JSD histogram cells per axis");
  app.add_option("--epsilon", f.epsilon, "Chamfer threshold for keeping NURBS faces");
  app.add_option("--ratios", f.ratios, "simple,moderate,complex retention ratios");
  app.add_option("--jobs", f.jobs, "Worker threads (0 = all)");
  app.add_option("--config", f.config, std::string("RunConfig JSON file (default: $") + kConfigEnv + ")");
  app.add_option("--format", f.format, "obj|stl for tessellate, xyz|ply for sample");
  app.add_option("--output,-o", f.output, "Write the primary output here instead of stdout");

  std::vector<std::string> inputs;
  std::string input;
  std::string generated;
  std::string reference;
  std::string pairs_file;
  std::string stats_path;
  std::size_t target = 0;

  auto* validate = app.add_subcommand("validate", "Check documents and report the invalidity ratio");
  validate->add_option("inputs", inputs, "Files or directories")->required();
  auto* tessellate = app.add_subcommand("tessellate", "Mesh a document to OBJ or binary STL");
  tessellate->add_option("input", input)->required();
  auto* sample = app.add_subcommand("sample", "Sample a normalized point cloud from a document");
  sample->add_option("input", input)->required();
  auto* metrics = app.add_subcommand("metrics", "CD/HD/JSD/MMD/IR between paired document directories");
  metrics->add_option("generated", generated)->required();
  metrics->add_option("reference", reference)->required();
  metrics->add_option("--pairs", pairs_file, "Manifest of 'generated reference' file name pairs");
  auto* metadata = app.add_subcommand("metadata", "Dimensions, area, volume and through-holes");
  metadata->add_option("input", input)->required();
  auto* curate = app.add_subcommand("curate", "Score a corpus and sample it by complexity tier");
  curate->add_option("input", input, "Directory of documents")->required();
  curate->add_option("--target", target, "Number of parts to keep")->required();
  curate->add_option("--stats", stats_path, "Write per-feature min/max here");
  auto* roundtrip = app.add_subcommand("roundtrip", "Canonicalize a document and report what changed");
  roundtrip->add_option("input", input)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "hcad: " << e.what() << "\n" << "run 'hcad --help' for usage\n";
    return kEnvironmentError;
  }

  try {
    const RunConfig c = resolve(f, err);
    if (*validate) return cmd_validate(inputs, c, f, out, err);
    if (*tessellate) return cmd_tessellate(input, c, f, out, err);
    if (*sample) return cmd_sample(input, c, f, out, err);
    if (*metrics) return cmd_metrics(generated, reference, pairs_file, c, f, out, err);
    if (*metadata) return cmd_metadata(input, c, f, out, err);
    if (*curate) return cmd_curate(input, target, stats_path, c, f, out, err);
    if (*roundtrip) return cmd_roundtrip(input, f, out, err);
  } catch (const IoError& e) {
    err << "hcad: " << e.what() << "\n";
    return kEnvironmentError;
  } catch (const ConfigError& e) {
    err << "hcad: " << e.what() << "\n";
    return kEnvironmentError;
  } catch (const std::exception& e) {
    err << "hcad: " << e.what() << "\n";
    return kFailure;
  }
  return kFailure;
}

}  // namespace hcad::cli
