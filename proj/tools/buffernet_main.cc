// Copyright 2026 The BufferNet Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line front end: buffernet <subcommand> [options].
//
// Exit codes: 0 when a result was computed (infeasible and infinite results
// included), 1 on I/O, parse or usage errors, 2 on domain failures.

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "CLI11.hpp"
#include "buffernet/clearing.h"
#include "buffernet/design.h"
#include "buffernet/errors.h"
#include "buffernet/format.h"
#include "buffernet/instance_io.h"
#include "buffernet/instances.h"
#include "buffernet/network.h"
#include "json.hpp"

namespace buffernet {
namespace {

using Json = nlohmann::ordered_json;
namespace fs = std::filesystem;

// ---- Serialization ----------------------------------------------------------

Json Number(double value) {
  if (!std::isfinite(value)) return FormatNumber(value);
  return RoundSignificant(value);
}

Json Number(const ExtendedReal& value) {
  return value.infinite ? Json("inf") : Number(value.value);
}

Json Vector(const Eigen::VectorXd& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(Number(v[i]));
  return out;
}

Json BankNames(const NetworkInstance& instance, const std::vector<int>& idx) {
  Json out = Json::array();
  for (int i : idx) out.push_back(instance.names[i]);
  return out;
}

std::string CsvCell(const std::string& text) {
  if (text.find_first_of(",\"\n") == std::string::npos) return text;
  std::string quoted = "\"";
  for (char ch : text) {
    if (ch == '"') quoted += '"';
    quoted += ch;
  }
  return quoted + "\"";
}

// Arrays expand to key_1, key_2, ...; nested objects to parent.child.
void Flatten(const Json& j, const std::string& key,
             std::vector<std::string>& keys,
             std::vector<std::string>& values) {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) {
      Flatten(v, key.empty() ? k : key + "." + k, keys, values);
    }
    return;
  }
  if (j.is_array()) {
    for (size_t i = 0; i < j.size(); ++i) {
      Flatten(j[i], key + "_" + std::to_string(i + 1), keys, values);
    }
    return;
  }
  keys.push_back(key);
  if (j.is_number()) {
    values.push_back(FormatNumber(j.get<double>()));
  } else if (j.is_string()) {
    values.push_back(CsvCell(j.get<std::string>()));
  } else if (j.is_boolean()) {
    values.push_back(j.get<bool>() ? "true" : "false");
  } else {
    values.emplace_back();
  }
}

std::string JoinCsvLine(const std::vector<std::string>& cells) {
  std::string line;
  for (size_t i = 0; i < cells.size(); ++i) {
    if (i > 0) line += ',';
    line += cells[i];
  }
  return line + "\n";
}

std::string RecordAsCsv(const Json& record) {
  std::vector<std::string> keys;
  std::vector<std::string> values;
  Flatten(record, "", keys, values);
  return JoinCsvLine(keys) + JoinCsvLine(values);
}

enum class Format { kJson, kCsv };

struct OutputOptions {
  std::string out;
  std::string format;
};

Format ResolveFormat(const OutputOptions& options, Format fallback) {
  if (options.format.empty()) return fallback;
  if (options.format == "json") return Format::kJson;
  if (options.format == "csv") return Format::kCsv;
  throw ParseError("--format must be json or csv, got '" + options.format +
                   "'");
}

void Emit(const std::string& text, const OutputOptions& options) {
  if (options.out.empty()) {
    std::cout << text << std::flush;
  } else {
    WriteFileAtomically(options.out, text);
  }
}

void EmitRecord(const Json& record, const OutputOptions& options) {
  Emit(ResolveFormat(options, Format::kJson) == Format::kJson
           ? record.dump() + "\n"
           : RecordAsCsv(record),
       options);
}

// ---- Inputs -----------------------------------------------------------------

NetworkInstance LoadValidInstance(const std::string& path) {
  NetworkInstance instance = LoadInstance(path);
  Validate(instance);
  return instance;
}

Json ReadJsonFile(const std::string& path) {
  const std::string text = ReadTextFile(path);
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
}

Eigen::VectorXd JsonVector(const Json& j, Eigen::Index expected,
                           const std::string& where) {
  if (!j.is_array()) throw ParseError(where + " must be an array");
  if (static_cast<Eigen::Index>(j.size()) != expected) {
    throw ParseError(where + " has " + std::to_string(j.size()) +
                     " entries, expected " + std::to_string(expected));
  }
  Eigen::VectorXd v(expected);
  for (Eigen::Index i = 0; i < expected; ++i) {
    if (!j[i].is_number()) {
      throw ParseError(where + "[" + std::to_string(i) + "] is not a number");
    }
    v[i] = j[i].get<double>();
  }
  return v;
}

// A JSON array, or an object {"buffer": [...]}.
Eigen::VectorXd LoadBuffer(const std::string& path,
                           const NetworkInstance& instance) {
  if (path.empty()) return Eigen::VectorXd::Zero(instance.num_banks());
  Json j = ReadJsonFile(path);
  if (j.is_object()) {
    for (const auto& [key, value] : j.items()) {
      if (key != "buffer") {
        throw ParseError(path + ": unknown field \"" + key + "\"");
      }
    }
    if (!j.contains("buffer")) {
      throw ParseError(path + ": missing required field \"buffer\"");
    }
    j = j["buffer"];
  }
  Eigen::VectorXd b = JsonVector(j, instance.num_banks(), path + ": buffer");
  if (b.size() > 0 && !(b.minCoeff() >= 0.0)) {
    throw PreconditionError(path + ": buffer entries must be nonnegative");
  }
  return b;
}

// {"price_shock": [m], "inflow_shock": [n]}; both optional. The realized
// inflow is c̄ + S * price_shock + inflow_shock.
Eigen::VectorXd ShockedInflow(const std::string& path,
                              const NetworkInstance& instance) {
  Eigen::VectorXd inflow = instance.external;
  if (path.empty()) return inflow;
  const Json j = ReadJsonFile(path);
  if (!j.is_object()) throw ParseError(path + ": shock must be an object");
  for (const auto& [key, value] : j.items()) {
    if (key == "price_shock") {
      inflow += instance.portfolio *
                JsonVector(value, instance.num_assets(), path + ": " + key);
    } else if (key == "inflow_shock") {
      inflow += JsonVector(value, instance.num_banks(), path + ": " + key);
    } else {
      throw ParseError(path + ": unknown field \"" + key + "\"");
    }
  }
  return inflow;
}

int SweepThreads() {
  const char* env = std::getenv("BUFFERNET_THREADS");
  if (env == nullptr || *env == '\0') return 0;
  char* end = nullptr;
  const long value = std::strtol(env, &end, 10);
  if (*end != '\0' || value < 0) {
    throw ParseError("BUFFERNET_THREADS must be a nonnegative integer");
  }
  return static_cast<int>(value);
}

// ---- Subcommands ------------------------------------------------------------

int RunValidate(const std::string& path, const OutputOptions& output) {
  const NetworkInstance instance = LoadInstance(path);
  const ValidationReport report = Inspect(instance);
  Json record;
  record["valid"] = report.structurally_valid();
  record["violations"] = report.violations;
  record["num_banks"] = instance.num_banks();
  record["num_assets"] = instance.num_assets();
  if (report.structurally_valid()) {
    record["r_positive"] = report.nominal_no_default;
    record["min_nominal_margin"] = Number(report.min_nominal_margin);
  }
  EmitRecord(record, output);
  if (!report.structurally_valid()) {
    for (const std::string& v : report.violations) {
      std::cerr << "violation: " << v << "\n";
    }
    return 2;
  }
  return 0;
}

struct ClearingArgs {
  std::string instance;
  std::string buffer;
  std::string shock;
};

int RunClearing(const ClearingArgs& args, const OutputOptions& output) {
  const NetworkInstance instance = LoadValidInstance(args.instance);
  const Eigen::VectorXd inflow =
      ShockedInflow(args.shock, instance) + LoadBuffer(args.buffer, instance);
  const ClearingResult result = Clear(instance, inflow);
  Json record;
  record["feasible"] = result.feasible;
  record["loss"] = Number(result.systemic_loss);
  record["clearing_vector"] = Vector(result.clearing_vector);
  record["default_set"] = BankNames(instance, result.default_set);
  record["inflow"] = Vector(inflow);
  EmitRecord(record, output);
  return 0;
}

struct MarginArgs {
  std::string instance;
  std::string norm = "linf";
  std::string buffer;
  bool insolvency = false;
};

int RunMargin(const MarginArgs& args, const OutputOptions& output) {
  const Norm norm = ParseNorm(args.norm);
  const NetworkInstance instance = LoadValidInstance(args.instance);
  const Eigen::VectorXd buffer = LoadBuffer(args.buffer, instance);
  Json record;
  record["kind"] = args.insolvency ? "insolvency" : "default";
  record["norm"] = NormName(norm);
  if (args.insolvency) {
    const std::optional<ExtendedReal> margin =
        InsolvencyMargin(instance, buffer, norm);
    record["feasible"] = margin.has_value();
    record["margin"] = margin ? Number(*margin) : Json(nullptr);
  } else {
    record["feasible"] = true;
    record["margin"] = Number(DefaultMargin(instance, buffer, norm));
  }
  EmitRecord(record, output);
  return 0;
}

struct DesignArgs {
  std::string instance;
  std::string norm = "linf";
  double budget = 0.0;
  std::optional<double> radius;
  bool insolvency = false;
};

Json DesignRecord(const NetworkInstance& instance, const DesignResult& r) {
  Json record;
  record["status"] =
      r.status == DesignStatus::kOptimal ? "optimal" : "infeasible";
  record["objective"] = Number(r.objective);
  record["spend"] = Number(r.spend);
  record["buffer"] = Vector(r.buffer);
  record["active_banks"] = BankNames(instance, r.active_banks);
  record["iterations"] = r.iterations;
  return record;
}

int RunDesign(const DesignArgs& args, Metric metric,
              const OutputOptions& output) {
  const Norm norm = ParseNorm(args.norm);
  const NetworkInstance instance = LoadValidInstance(args.instance);
  Json record;
  record["design"] = metric == Metric::kLoss ? "loss"
                     : args.insolvency       ? "insolvency_margin"
                                             : "default_margin";
  record["norm"] = NormName(norm);
  record["budget"] = Number(args.budget);
  DesignResult result;
  if (metric == Metric::kLoss) {
    record["radius"] = Number(*args.radius);
    result = MinLoss(instance, {norm, *args.radius}, args.budget);
  } else if (args.insolvency) {
    result = MaxInsolvencyMargin(instance, args.budget, norm);
  } else {
    result = MaxDefaultMargin(instance, args.budget, norm);
  }
  record.update(DesignRecord(instance, result));
  EmitRecord(record, output);
  return 0;
}

struct CertificateArgs {
  std::string instance;
  std::string norm = "linf";
  double radius = 0.0;
};

int RunCertificate(const CertificateArgs& args, const OutputOptions& output) {
  const Norm norm = ParseNorm(args.norm);
  const NetworkInstance instance = LoadValidInstance(args.instance);
  const BudgetCertificate cert =
      MinimalBudgetCertificate(instance, args.radius, norm);
  std::vector<int> active;
  for (Eigen::Index i = 0; i < cert.buffer.size(); ++i) {
    if (cert.buffer[i] > kActiveBufferThreshold) active.push_back(i);
  }
  Json record;
  record["norm"] = NormName(norm);
  record["radius"] = Number(args.radius);
  record["budget"] = Number(cert.budget);
  record["buffer"] = Vector(cert.buffer);
  record["active_banks"] = BankNames(instance, active);
  EmitRecord(record, output);
  return 0;
}

struct SweepArgs {
  std::string instance;
  std::string norm = "linf";
  std::string budgets;
  std::optional<double> radius;
  std::string policies = "opt,margin,uniform,expprop";
};

int RunSweep(const SweepArgs& args, const OutputOptions& output) {
  SweepOptions options;
  options.norm = ParseNorm(args.norm);
  options.budgets = ParseBudgetGrid(args.budgets);
  options.radius = args.radius;
  options.policies = ParsePolicies(args.policies);
  options.threads = SweepThreads();
  const Format format = ResolveFormat(output, Format::kCsv);
  const NetworkInstance instance = LoadValidInstance(args.instance);

  const std::vector<SweepRow> rows = Sweep(instance, options);
  for (const SweepRow& row : rows) {
    if (!row.value) {
      std::cerr << "warning: budget " << FormatNumber(row.budget) << ", "
                << PolicyName(row.policy) << " " << MetricName(row.metric)
                << ": " << row.note << "\n";
    }
  }
  if (format == Format::kCsv) {
    std::ostringstream csv;
    WriteSweepCsv(rows, instance.num_banks(), csv);
    Emit(csv.str(), output);
    return 0;
  }
  Json table = Json::array();
  for (const SweepRow& row : rows) {
    Json record;
    record["budget"] = Number(row.budget);
    record["policy"] = PolicyName(row.policy);
    record["metric"] = MetricName(row.metric);
    record["value"] = row.value ? Number(*row.value) : Json(nullptr);
    record["spend"] = Number(row.spend);
    record["buffer"] = Vector(row.buffer);
    if (!row.note.empty()) record["note"] = row.note;
    table.push_back(std::move(record));
  }
  Emit(table.dump() + "\n", output);
  return 0;
}

Json InstanceSummary(const NetworkInstance& instance, const std::string& path) {
  const ValidationReport report = Inspect(instance);
  Json record;
  record["path"] = path;
  record["num_banks"] = instance.num_banks();
  record["num_assets"] = instance.num_assets();
  record["r_positive"] = report.nominal_no_default;
  record["min_nominal_margin"] = Number(report.min_nominal_margin);
  return record;
}

// The instance goes to --out (JSON or CSV bundle by extension) with a summary
// on stdout, or to stdout as JSON when --out is absent.
int EmitInstance(const NetworkInstance& instance,
                 const OutputOptions& output) {
  if (output.out.empty()) {
    std::cout << InstanceToJson(instance) << std::flush;
  } else {
    SaveInstance(instance, output.out);
    std::cout << InstanceSummary(instance, output.out).dump() << "\n";
  }
  return 0;
}

void ApplyConfig(const std::string& path, CorePeripheryParams& p) {
  const Json j = ReadJsonFile(path);
  if (!j.is_object()) throw ParseError(path + ": config must be an object");
  for (const auto& [key, value] : j.items()) {
    const std::string where = path + ": " + key;
    if (!value.is_number()) throw ParseError(where + " must be a number");
    if (key == "n") {
      p.n = value.get<int>();
    } else if (key == "core_size") {
      p.core_size = value.get<int>();
    } else if (key == "m") {
      p.m = value.get<int>();
    } else if (key == "seed") {
      p.seed = value.get<uint64_t>();
    } else if (key == "core_core_density") {
      p.core_core_density = value.get<double>();
    } else if (key == "core_periphery_density") {
      p.core_periphery_density = value.get<double>();
    } else if (key == "periphery_periphery_density") {
      p.periphery_periphery_density = value.get<double>();
    } else if (key == "liability_scale_core") {
      p.liability_scale_core = value.get<double>();
    } else if (key == "liability_scale_periphery") {
      p.liability_scale_periphery = value.get<double>();
    } else if (key == "holding_scale_core") {
      p.holding_scale_core = value.get<double>();
    } else if (key == "holding_scale_periphery") {
      p.holding_scale_periphery = value.get<double>();
    } else if (key == "weight_shape") {
      p.weight_shape = value.get<double>();
    } else if (key == "margin_level") {
      p.margin_level = value.get<double>();
    } else {
      throw ParseError(path + ": unknown field \"" + key + "\"");
    }
  }
}

struct CalibrateArgs {
  std::string marginals;
  std::string holdings;
  std::string externals;
  std::string costs;
  double tolerance = 1e-9;
  int max_iterations = 100000;
};

int RunCalibrate(const CalibrateArgs& args, const OutputOptions& output) {
  const MarginalTable table = LoadMarginalTable(args.marginals);
  const std::vector<std::string>& names = table.marginals.names;
  Eigen::MatrixXd holdings = table.holdings;
  if (!args.holdings.empty()) {
    if (holdings.cols() > 0) {
      throw ParseError(
          "holdings given both as marginal columns and via --holdings");
    }
    holdings = LoadNamedMatrix(args.holdings, names);
  }
  const Eigen::VectorXd externals = LoadNamedVector(args.externals, names);
  const Eigen::VectorXd costs =
      args.costs.empty()
          ? Eigen::VectorXd::Ones(static_cast<Eigen::Index>(names.size()))
          : LoadNamedVector(args.costs, names);
  IpfOptions ipf;
  ipf.tolerance = args.tolerance;
  ipf.max_iterations = args.max_iterations;
  std::vector<std::string> notes;
  const NetworkInstance instance = AssembleFromMarginals(
      table.marginals, holdings, externals, costs, ipf, &notes);
  for (const std::string& note : notes) std::cerr << "note: " << note << "\n";
  return EmitInstance(instance, output);
}

void AddOutputOptions(CLI::App* cmd, OutputOptions& output) {
  cmd->add_option("--out", output.out, "Write the result to this path");
  cmd->add_option("--format", output.format, "json or csv");
}

int Main(int argc, char** argv) {
  CLI::App app{"Pre-shock buffer design for interbank contagion networks"};
  app.require_subcommand(1);
  OutputOptions output;
  int status = 0;
  std::function<int()> action;

  std::string validate_path;
  CLI::App* validate = app.add_subcommand("validate", "Check an instance");
  validate->add_option("instance", validate_path)->required();
  AddOutputOptions(validate, output);
  validate->callback([&] {
    action = [&] { return RunValidate(validate_path, output); };
  });

  ClearingArgs clearing_args;
  CLI::App* clearing =
      app.add_subcommand("clearing", "Clearing vector for a realized shock");
  clearing->add_option("instance", clearing_args.instance)->required();
  clearing->add_option("--buffer", clearing_args.buffer, "Buffer JSON file");
  clearing->add_option("--shock", clearing_args.shock, "Shock JSON file");
  AddOutputOptions(clearing, output);
  clearing->callback([&] {
    action = [&] { return RunClearing(clearing_args, output); };
  });

  MarginArgs margin_args;
  CLI::App* margin =
      app.add_subcommand("margin", "Default or insolvency margin");
  margin->add_option("instance", margin_args.instance)->required();
  margin->add_option("--norm", margin_args.norm, "linf or l1");
  margin->add_option("--buffer", margin_args.buffer, "Buffer JSON file");
  margin->add_flag("--insolvency", margin_args.insolvency);
  AddOutputOptions(margin, output);
  margin->callback([&] {
    action = [&] { return RunMargin(margin_args, output); };
  });

  DesignArgs design_args;
  CLI::App* design = app.add_subcommand("design", "Optimal buffer design");
  design->require_subcommand(1);
  CLI::App* design_margin =
      design->add_subcommand("margin", "Maximize the margin under a budget");
  CLI::App* design_loss = design->add_subcommand(
      "loss", "Minimize the worst-case loss under a budget");
  for (CLI::App* cmd : {design_margin, design_loss}) {
    cmd->add_option("instance", design_args.instance)->required();
    cmd->add_option("--norm", design_args.norm, "linf or l1");
    cmd->add_option("--budget", design_args.budget)
        ->required()
        ->check(CLI::NonNegativeNumber);
    AddOutputOptions(cmd, output);
  }
  design_margin->add_flag("--insolvency", design_args.insolvency);
  design_loss->add_option("--radius", design_args.radius)
      ->required()
      ->check(CLI::NonNegativeNumber);
  design_margin->callback([&] {
    action = [&] { return RunDesign(design_args, Metric::kMargin, output); };
  });
  design_loss->callback([&] {
    action = [&] { return RunDesign(design_args, Metric::kLoss, output); };
  });

  CertificateArgs certificate_args;
  CLI::App* certificate =
      app.add_subcommand("certificate", "Minimal budget for a target radius");
  certificate->add_option("instance", certificate_args.instance)->required();
  certificate->add_option("--norm", certificate_args.norm, "linf or l1");
  certificate->add_option("--radius", certificate_args.radius)
      ->required()
      ->check(CLI::NonNegativeNumber);
  AddOutputOptions(certificate, output);
  certificate->callback([&] {
    action = [&] { return RunCertificate(certificate_args, output); };
  });

  SweepArgs sweep_args;
  CLI::App* sweep = app.add_subcommand("sweep", "Budget sweep over policies");
  sweep->add_option("instance", sweep_args.instance)->required();
  sweep->add_option("--norm", sweep_args.norm, "linf or l1");
  sweep->add_option("--budgets", sweep_args.budgets,
                    "start:stop:step or a comma list")
      ->required();
  sweep->add_option("--radius", sweep_args.radius)
      ->check(CLI::NonNegativeNumber);
  sweep->add_option("--policies", sweep_args.policies,
                    "Comma list of opt, opt_margin, opt_loss, margin, "
                    "uniform, expprop");
  AddOutputOptions(sweep, output);
  sweep->callback([&] {
    action = [&] { return RunSweep(sweep_args, output); };
  });

  CorePeripheryParams cp_params;
  std::string cp_config;
  CLI::App* generate = app.add_subcommand("generate", "Synthetic instances");
  generate->require_subcommand(1);
  CLI::App* cp = generate->add_subcommand("cp", "Core-periphery network");
  cp->add_option("--config", cp_config, "JSON file of generator parameters");
  cp->add_option("--n", cp_params.n, "Number of banks");
  cp->add_option("--core", cp_params.core_size, "Core size");
  cp->add_option("--assets", cp_params.m, "Number of assets");
  cp->add_option("--seed", cp_params.seed);
  cp->add_option("--core-core-density", cp_params.core_core_density);
  cp->add_option("--core-periphery-density",
                 cp_params.core_periphery_density);
  cp->add_option("--periphery-periphery-density",
                 cp_params.periphery_periphery_density);
  cp->add_option("--margin-level", cp_params.margin_level);
  cp->add_option("--out", output.out, "Instance path (.json or directory)");
  cp->callback([&] {
    action = [&] {
      // Flags given on the command line win over the config file.
      CorePeripheryParams params;
      if (!cp_config.empty()) ApplyConfig(cp_config, params);
      auto take = [&](const char* flag, auto& field, const auto& value) {
        if (cp->count(flag) > 0) field = value;
      };
      take("--n", params.n, cp_params.n);
      take("--core", params.core_size, cp_params.core_size);
      take("--assets", params.m, cp_params.m);
      take("--seed", params.seed, cp_params.seed);
      take("--core-core-density", params.core_core_density,
           cp_params.core_core_density);
      take("--core-periphery-density", params.core_periphery_density,
           cp_params.core_periphery_density);
      take("--periphery-periphery-density",
           params.periphery_periphery_density,
           cp_params.periphery_periphery_density);
      take("--margin-level", params.margin_level, cp_params.margin_level);
      return EmitInstance(GenerateCorePeriphery(params), output);
    };
  });

  CalibrateArgs calibrate_args;
  CLI::App* calibrate = app.add_subcommand(
      "calibrate", "Instance from bank-level marginals via IPF");
  calibrate->add_option("--marginals", calibrate_args.marginals,
                        "name,interbank_assets,interbank_liabilities,...")
      ->required();
  calibrate->add_option("--holdings", calibrate_args.holdings);
  calibrate->add_option("--externals", calibrate_args.externals)->required();
  calibrate->add_option("--costs", calibrate_args.costs);
  calibrate->add_option("--tolerance", calibrate_args.tolerance);
  calibrate->add_option("--max-iterations", calibrate_args.max_iterations);
  calibrate->add_option("--out", output.out,
                        "Instance path (.json or directory)");
  calibrate->callback([&] {
    action = [&] { return RunCalibrate(calibrate_args, output); };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    status = app.exit(e);
    return status == 0 ? 0 : 1;
  }

  try {
    return action();
  } catch (const StructuralError& e) {
    for (const std::string& v : e.violations()) {
      std::cerr << "violation: " << v << "\n";
    }
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.kind() == Error::Kind::kInput ? 1 : 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace
}  // namespace buffernet

int main(int argc, char** argv) { return buffernet::Main(argc, argv); }
