// Copyright 2026 The oamgate Authors
//
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

#include "oamgate/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iomanip>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>

#include "oamgate/formats.hpp"
#include "oamgate/verify.hpp"

namespace oamgate {
namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::string read_text(const std::string& path) {
  if (path == "-") {
    return std::string(std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>());
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open '" + path + "'");
  return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

Json read_json(const std::string& path) {
  const std::string text = read_text(path);
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& ex) {
    throw FormatError(path + ": " + ex.what());
  }
}

void write_text(const std::string& path, const std::string& text, std::ostream& fallback) {
  if (path.empty()) {
    fallback << text;
    return;
  }
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw UsageError("cannot write '" + path + "'");
  f << text;
  if (!f) throw UsageError("failed writing '" + path + "'");
}

OrderedJson gate_json(const GateSpec& spec) {
  OrderedJson g;
  g["d"] = spec.d;
  g["p"] = spec.p;
  g["ell0"] = spec.ell0;
  g["variant"] = std::string(to_string(spec.variant));
  g["config"] = std::string(to_string(spec.config));
  g["mesh_fourier"] = spec.use_mesh_fourier;
  if (spec.use_mesh_fourier) g["scheme"] = std::string(to_string(spec.effective_scheme()));
  return g;
}

std::string gate_line(const GateSpec& spec) {
  std::ostringstream s;
  s << "d=" << spec.d << " p=" << spec.p << " ell0=" << spec.ell0
    << " variant=" << to_string(spec.variant) << " config=" << to_string(spec.config);
  if (spec.use_mesh_fourier) s << " fourier=" << to_string(spec.effective_scheme()) << "-mesh";
  return s.str();
}

// Raw option strings, validated after parsing so errors carry our wording.
struct GateOptions {
  GateSpec spec;
  std::string variant = "a";
  std::string config = "mz";
  std::string scheme;

  GateSpec resolve() const {
    GateSpec out = spec;
    out.variant = parse_variant(variant);
    out.config = parse_config(config);
    if (!scheme.empty()) out.scheme = parse_scheme(scheme);
    out.validate();
    return out;
  }
};

void add_gate_options(CLI::App* cmd, GateOptions& g) {
  cmd->add_option("--d", g.spec.d, "Qudit dimension (number of spatial modes)")->capture_default_str();
  cmd->add_option("--p", g.spec.p, "Step between coding OAM values")->capture_default_str();
  cmd->add_option("--ell0", g.spec.ell0, "Lowest coding OAM value")->capture_default_str();
  cmd->add_option("--variant", g.variant, "Correction variant: a (move SPP) or b (bracket SPPs)")
      ->capture_default_str();
  cmd->add_option("--config", g.config, "mz (two sorters) or michelson (folded)")->capture_default_str();
  cmd->add_flag("--mesh-fourier", g.spec.use_mesh_fourier,
                "Realize every Fourier gate as a beamsplitter mesh");
  cmd->add_option("--scheme", g.scheme, "Mesh scheme: rectangular or butterfly");
}

int cmd_simulate(const GateSpec& spec, const std::string& in_path, const std::string& out_path,
                 std::ostream& out, std::ostream& err) {
  const Network net = build_network(spec);
  const CodingSubspace& sub = *net.meta.subspace;
  const ParsedState parsed = parse_state(read_json(in_path), spec.d);
  if (parsed.renormalized) {
    err << "warning: input norm " << std::setprecision(17) << parsed.input_norm
        << " differs from 1 by more than 1e-6; renormalized\n";
  }
  auto in_domain = [&](const BasisLabel& l) { return l.mode == 0 && sub.index_of(l.ell).has_value(); };
  for (const auto& [label, amp] : parsed.state.amplitudes()) {
    if (!in_domain(label)) {
      err << "warning: input ket (" << label.ell << ", " << label.mode
          << ") lies outside the coding subspace\n";
    }
  }

  const PhotonState result = apply_network(net, parsed.state);

  out << "# simulate " << gate_line(spec) << "\n";
  out << "# ell mode re im |amp|\n";
  OrderedJson flagged = OrderedJson::array();
  out << std::setprecision(17);
  for (const auto& [label, amp] : result.amplitudes()) {
    out << label.ell << ' ' << label.mode << ' ' << amp.real() << ' ' << amp.imag() << ' '
        << std::abs(amp);
    if (!in_domain(label)) {
      out << " out-of-domain";
      flagged.push_back({label.ell, label.mode});
    }
    out << '\n';
  }

  if (!out_path.empty()) {
    OrderedJson doc;
    doc["format_version"] = kFormatVersion;
    doc["kind"] = "state";
    doc["gate"] = gate_json(spec);
    doc["input_renormalized"] = parsed.renormalized;
    doc["amplitudes"] = amplitudes_to_json(result);
    doc["out_of_domain"] = std::move(flagged);
    write_text(out_path, doc.dump() + "\n", out);
  }
  return kExitOk;
}

int cmd_verify(const GridSpec& grid, double tol, int trials, std::uint64_t seed,
               const std::string& out_path, std::ostream& out, std::ostream& err) {
  std::vector<VerificationReport> reports;
  std::uint64_t index = 0;
  for (int d : grid.d) {
    for (int p : grid.p) {
      for (std::int64_t ell0 : grid.ell0) {
        for (Variant variant : grid.variant) {
          for (Config config : grid.config) {
            GateSpec spec{d, p, ell0, variant, config, grid.mesh_fourier, std::nullopt};
            spec.validate();
            const Network net = build_network(spec);
            reports.push_back(verify_gate(net, CodingSubspace(d, p, ell0), trials, tol,
                                          splitmix64(seed + index)));
            ++index;
          }
        }
      }
    }
  }

  std::size_t passed = 0;
  for (const auto& r : reports) passed += r.passed ? 1 : 0;

  OrderedJson header;
  header["format_version"] = kFormatVersion;
  header["kind"] = "verify-report";
  header["points"] = reports.size();
  header["passed"] = passed;
  header["tolerance"] = tol;
  header["trials"] = trials;
  header["seed"] = seed;
  header["mesh_fourier"] = grid.mesh_fourier;
  std::string text = header.dump() + "\n";
  for (const auto& r : reports) text += report_to_json(r).dump() + "\n";
  write_text(out_path, text, out);

  err << "verify: " << passed << "/" << reports.size() << " points passed\n";
  for (const auto& r : reports) {
    if (!r.passed) {
      err << "  FAIL d=" << r.params.d << " p=" << r.params.p << " ell0=" << r.params.ell0
          << " variant=" << to_string(r.params.variant) << " config=" << to_string(r.params.config);
      if (!r.diagnostic.empty()) err << ": " << r.diagnostic;
      err << '\n';
    }
  }
  return passed == reports.size() ? kExitOk : kExitVerifyFailed;
}

int cmd_resources(const GateSpec& spec, const std::string& out_path, std::ostream& out) {
  GateSpec plain = spec;
  plain.use_mesh_fourier = false;
  const ResourceTally tally = tally_resources(build_network(plain));

  out << "# resources " << gate_line(spec) << "\n";
  out << "sorters: " << tally.sorter_count << "\n";
  out << "spps: " << tally.spp_count() << " [";
  for (std::size_t i = 0; i < tally.spp_list.size(); ++i) {
    out << (i ? ", " : "") << std::showpos << tally.spp_list[i] << std::noshowpos;
  }
  out << "]\n";
  out << "fourier: " << tally.fourier_count << "\n";
  out << "z_phases: " << tally.dove_phase_count << "\n";
  out << "circulators: " << tally.circulator_count << "\n";
  out << "retroreflectors: " << tally.retroreflector_count << "\n";

  OrderedJson doc;
  doc["format_version"] = kFormatVersion;
  doc["kind"] = "resources";
  doc["gate"] = gate_json(spec);
  doc["tally"] = tally_to_json(tally);

  if (spec.use_mesh_fourier) {
    const Mesh mesh = fourier_mesh(spec.d, spec.effective_scheme());
    const ResourceTally meshed = tally_resources(build_network(spec));
    out << "mesh_scheme: " << to_string(mesh.scheme) << "\n";
    out << "beamsplitters_per_fourier: " << mesh.beamsplitter_count() << "\n";
    out << "phase_shifters_per_fourier: " << mesh.phase_shifter_count() << "\n";
    out << "beamsplitters_total: " << meshed.beamsplitter_count << "\n";
    out << "phase_shifters_total: " << meshed.mode_phase_count << "\n";
    OrderedJson m;
    m["scheme"] = std::string(to_string(mesh.scheme));
    m["beamsplitters_per_fourier"] = mesh.beamsplitter_count();
    m["phase_shifters_per_fourier"] = mesh.phase_shifter_count();
    m["tally"] = tally_to_json(meshed);
    doc["mesh"] = std::move(m);
  }
  if (!out_path.empty()) write_text(out_path, doc.dump() + "\n", out);
  return kExitOk;
}

int cmd_synth(int d, const std::string& scheme_name, const std::string& out_path, std::ostream& out,
              std::ostream& err) {
  const MeshScheme scheme = scheme_name.empty()
                                ? (d >= 2 && is_power_of_two(d) ? MeshScheme::Butterfly
                                                                : MeshScheme::Rectangular)
                                : parse_scheme(scheme_name);
  if (scheme == MeshScheme::Butterfly && (d < 2 || !is_power_of_two(d))) {
    throw UsageError("d must be a power of two for the butterfly scheme (got d=" + std::to_string(d) + ")");
  }
  if (d < 1) throw UsageError("d must be positive");
  const Mesh mesh = fourier_mesh(d, scheme);
  const double residual = max_abs_diff(mesh_matrix(mesh), fourier_matrix(d));
  write_text(out_path, mesh_component_list(mesh, residual).dump() + "\n", out);
  err << "synth: d=" << d << " scheme=" << to_string(scheme) << " beamsplitters=" << mesh.beamsplitter_count()
      << " residual=" << std::setprecision(3) << residual << "\n";
  return kExitOk;
}

}  // namespace

void GateSpec::validate() const {
  if (d < 2) throw std::invalid_argument("d must be >= 2, got " + std::to_string(d));
  if (p < 1) throw std::invalid_argument("p must be >= 1, got " + std::to_string(p));
  if (variant == Variant::NotApplicable) throw std::invalid_argument("variant must be a or b");
  if (use_mesh_fourier && effective_scheme() == MeshScheme::Butterfly && !is_power_of_two(d)) {
    throw std::invalid_argument("d must be a power of two for the butterfly scheme (got d=" +
                                std::to_string(d) + ")");
  }
}

MeshScheme GateSpec::effective_scheme() const {
  if (scheme) return *scheme;
  return is_power_of_two(d) ? MeshScheme::Butterfly : MeshScheme::Rectangular;
}

Network build_network(const GateSpec& spec) {
  spec.validate();
  Network net = build_gate(spec.d, spec.p, spec.ell0, spec.variant, spec.config);
  if (spec.use_mesh_fourier) net = with_mesh_fourier(net, spec.effective_scheme());
  return net;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Cyclic X_d / X_d(p) gates on OAM qudits: simulate, verify, count, synthesize"};
  app.name("oamgate");
  app.require_subcommand(1);

  GateOptions sim_opts;
  std::string sim_in;
  std::string sim_out;
  CLI::App* sim = app.add_subcommand("simulate", "Apply a gate network to an input state");
  add_gate_options(sim, sim_opts);
  sim->add_option("--in", sim_in, "Input state: JSON array of [ell, mode, re, im] ('-' for stdin)")
      ->required();
  sim->add_option("--out", sim_out, "Also write the output state as JSON");

  GateOptions ver_opts;
  double tol = 1e-10;
  int trials = 100;
  std::uint64_t seed = 0;
  std::string grid_path;
  std::string ver_out;
  CLI::App* ver = app.add_subcommand("verify", "Check gates against the cyclic-permutation oracle");
  add_gate_options(ver, ver_opts);
  ver->add_option("--tol", tol, "Tolerance")->capture_default_str();
  ver->add_option("--trials", trials, "Random superpositions per point")->capture_default_str();
  ver->add_option("--seed", seed, "Base RNG seed")->capture_default_str();
  ver->add_option("--grid", grid_path, "Sweep grid JSON file");
  ver->add_option("--out", ver_out, "Report file (JSON lines); stdout if omitted");

  GateOptions res_opts;
  std::string res_out;
  CLI::App* res = app.add_subcommand("resources", "Tally physical devices of a gate network");
  add_gate_options(res, res_opts);
  res->add_option("--out", res_out, "Also write the tally as JSON");

  int synth_d = 4;
  std::string synth_scheme;
  std::string synth_out;
  CLI::App* syn = app.add_subcommand("synth", "Synthesize a Fourier-gate beamsplitter mesh");
  syn->add_option("--d", synth_d, "Number of modes")->capture_default_str();
  syn->add_option("--scheme", synth_scheme, "rectangular or butterfly (default: butterfly if d = 2^q)");
  syn->add_option("--out", synth_out, "Component list file; stdout if omitted");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& ex) {
    const int code = app.exit(ex, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*sim) return cmd_simulate(sim_opts.resolve(), sim_in, sim_out, out, err);
    if (*ver) {
      GridSpec grid;
      if (!grid_path.empty()) {
        grid = parse_grid(read_json(grid_path));
      } else if (ver->count("--d") > 0) {
        const GateSpec spec = ver_opts.resolve();
        grid = GridSpec{{spec.d}, {spec.p}, {spec.ell0}, {spec.variant}, {spec.config}, spec.use_mesh_fourier};
      } else {
        grid = default_grid();
        grid.mesh_fourier = ver_opts.spec.use_mesh_fourier;
      }
      if (trials < 0) throw UsageError("--trials must be >= 0");
      return cmd_verify(grid, tol, trials, seed, ver_out, out, err);
    }
    if (*res) return cmd_resources(res_opts.resolve(), res_out, out);
    if (*syn) return cmd_synth(synth_d, synth_scheme, synth_out, out, err);
  } catch (const std::exception& ex) {
    err << "error: " << ex.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace oamgate
