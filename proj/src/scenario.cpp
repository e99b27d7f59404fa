#include "edlab/scenario.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "edlab/uncertainty.hpp"

namespace edlab {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw ResolveError("scenario field '" + where + "': " + what);
}

cplx parse_entry(const json& j, const std::string& where) {
  if (j.is_number()) return cplx(j.get<double>(), 0.0);
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
    return cplx(j[0].get<double>(), j[1].get<double>());
  }
  fail(where, "complex entries are numbers or [re, im] pairs");
}

cmat parse_matrix(const json& j, const std::string& where) {
  if (!j.is_array() || j.empty()) fail(where, "expected a non-empty array of rows");
  const size_t rows = j.size();
  const size_t cols = j[0].is_array() && (j[0].empty() || j[0][0].is_array() || j[0][0].is_number())
                          ? j[0].size()
                          : 0;
  if (cols == 0) fail(where, "expected rows of entries");
  cmat out(rows, cols);
  for (size_t r = 0; r < rows; ++r) {
    if (!j[r].is_array() || j[r].size() != cols) fail(where, "ragged rows");
    for (size_t c = 0; c < cols; ++c) {
      out(r, c) = parse_entry(j[r][c], where);
    }
  }
  return out;
}

cvec parse_vector(const json& j, const std::string& where) {
  if (!j.is_array() || j.empty()) fail(where, "expected a non-empty array");
  cvec out(j.size());
  for (size_t i = 0; i < j.size(); ++i) out[i] = parse_entry(j[i], where);
  return out;
}

AlgebraPtr parse_algebra(const json& j, const std::string& where) {
  if (j.is_object() && j.contains("full")) {
    const int n = j["full"].get<int>();
    if (n < 1) fail(where + ".full", "dimension must be positive");
    return VonNeumannAlgebra::full(n);
  }
  if (j.is_object() && j.contains("blocks")) {
    std::vector<BlockSpec> blocks;
    for (const json& b : j["blocks"]) {
      if (!b.contains("dim")) fail(where + ".blocks", "each block needs 'dim'");
      blocks.push_back({b["dim"].get<int>(),
                        b.contains("multiplicity") ? b["multiplicity"].get<int>() : 1});
    }
    cmat basis;
    if (j.contains("basis_change")) basis = parse_matrix(j["basis_change"], where + ".basis_change");
    try {
      return VonNeumannAlgebra::make(std::move(blocks), std::move(basis));
    } catch (const Error& e) {
      fail(where, e.what());
    }
  }
  fail(where, "expected {\"full\": n} or {\"blocks\": [...]}");
}

NormalState parse_state(const json& j, const AlgebraPtr& algebra, const std::string& where) {
  try {
    if (j.is_object() && j.contains("pure")) {
      cvec v = parse_vector(j["pure"], where + ".pure");
      if (v.size() != algebra->ambient_dim()) {
        fail(where + ".pure", "vector length != ambient dimension");
      }
      const double norm = v.norm();
      if (norm < 1e-12) fail(where + ".pure", "zero vector");
      v /= norm;
      return restrict_state(algebra, cmat(v * v.adjoint()));
    }
    if (j.is_object() && j.contains("ambient_density")) {
      return restrict_state(algebra,
                            parse_matrix(j["ambient_density"], where + ".ambient_density"));
    }
    if (j.is_object() && j.contains("block_densities")) {
      std::vector<cmat> densities;
      int k = 0;
      for (const json& d : j["block_densities"]) {
        densities.push_back(
            parse_matrix(d, where + ".block_densities[" + std::to_string(k++) + "]"));
      }
      return NormalState(algebra, std::move(densities));
    }
    if (j.is_object() && j.contains("maximally_mixed") && j["maximally_mixed"].get<bool>()) {
      std::vector<cmat> densities;
      int total = 0;
      for (const BlockSpec& b : algebra->blocks()) total += b.dim;
      for (const BlockSpec& b : algebra->blocks()) {
        densities.push_back(cmat::Identity(b.dim, b.dim) / double(total));
      }
      return NormalState(algebra, std::move(densities));
    }
  } catch (const ResolveError&) {
    throw;
  } catch (const Error& e) {
    fail(where, e.what());
  }
  fail(where, "expected 'pure', 'ambient_density', 'block_densities' or 'maximally_mixed'");
}

AlgebraElement parse_observable(const json& j, const AlgebraPtr& algebra,
                                const std::string& where) {
  try {
    if (j.is_object() && j.contains("pauli")) {
      const std::string p = j["pauli"].get<std::string>();
      cmat m;
      if (p == "x") m = pauli_x();
      else if (p == "y") m = pauli_y();
      else if (p == "z") m = pauli_z();
      else fail(where + ".pauli", "expected 'x', 'y' or 'z'");
      if (algebra->block_count() != 1 || algebra->blocks()[0].dim != 2) {
        fail(where + ".pauli", "pauli shorthand needs a single 2-dimensional block");
      }
      return AlgebraElement(algebra, {m});
    }
    if (j.is_object() && j.contains("blocks")) {
      std::vector<cmat> blocks;
      int k = 0;
      for (const json& b : j["blocks"]) {
        blocks.push_back(parse_matrix(b, where + ".blocks[" + std::to_string(k++) + "]"));
      }
      return AlgebraElement(algebra, std::move(blocks));
    }
    if (j.is_object() && j.contains("ambient")) {
      const cmat m = parse_matrix(j["ambient"], where + ".ambient");
      if (!contains(algebra, m, 1e-9)) {
        fail(where + ".ambient", "matrix is not in the algebra");
      }
      return conditional_expectation(algebra, m);
    }
  } catch (const ResolveError&) {
    throw;
  } catch (const Error& e) {
    fail(where, e.what());
  }
  fail(where, "expected 'pauli', 'blocks' or 'ambient'");
}

MeasuringProcess parse_process(const json& j, const std::string& where) {
  MeasuringProcess mp;
  if (!j.contains("probe_dim") || !j.contains("probe_state") || !j.contains("labels") ||
      !j.contains("projections") || !j.contains("unitary")) {
    fail(where, "needs probe_dim, probe_state, labels, projections, unitary");
  }
  mp.probe_dim = j["probe_dim"].get<int>();
  mp.probe_state = parse_matrix(j["probe_state"], where + ".probe_state");
  std::vector<double> labels;
  for (const json& l : j["labels"]) labels.push_back(l.get<double>());
  mp.outcomes = OutcomeSpace::line(std::move(labels));
  int k = 0;
  for (const json& p : j["projections"]) {
    mp.meter_projections.push_back(
        parse_matrix(p, where + ".projections[" + std::to_string(k++) + "]"));
  }
  mp.unitary = parse_matrix(j["unitary"], where + ".unitary");
  return mp;
}

KrausInstrument parse_instrument(const json& j, const AlgebraPtr& algebra,
                                 const AlgebraElement& obs_a, const AlgebraElement& obs_b,
                                 std::optional<MeasuringProcess>& process_out,
                                 const std::string& where) {
  try {
    if (j.is_object() && j.contains("builder")) {
      const std::string b = j["builder"].get<std::string>();
      if (b == "trivial") {
        const double label = j.contains("label") ? j["label"].get<double>() : 0.0;
        return trivial_instrument(algebra, label);
      }
      if (b == "projective") {
        const std::string of = j.contains("of") ? j["of"].get<std::string>() : "A";
        if (j.contains("observable")) {
          return projective_instrument(
              parse_observable(j["observable"], algebra, where + ".observable"));
        }
        if (of == "A") return projective_instrument(obs_a);
        if (of == "B") return projective_instrument(obs_b);
        fail(where + ".of", "expected 'A' or 'B'");
      }
      if (b == "random") {
        const uint64_t seed = j.contains("seed") ? j["seed"].get<uint64_t>() : 1;
        const int outcomes = j.contains("outcomes") ? j["outcomes"].get<int>() : 2;
        const int rank = j.contains("kraus_rank") ? j["kraus_rank"].get<int>() : 2;
        const int arity = j.contains("arity") ? j["arity"].get<int>() : 1;
        return random_instrument(seed, algebra, outcomes, rank, arity);
      }
      if (b == "sequential") {
        if (!j.contains("first") || !j.contains("second")) {
          fail(where, "sequential builder needs 'first' and 'second'");
        }
        std::optional<MeasuringProcess> ignored;
        KrausInstrument first =
            parse_instrument(j["first"], algebra, obs_a, obs_b, ignored, where + ".first");
        KrausInstrument second =
            parse_instrument(j["second"], algebra, obs_a, obs_b, ignored, where + ".second");
        return sequential_instrument(first, second);
      }
      fail(where + ".builder", "unknown builder '" + b + "'");
    }
    if (j.is_object() && j.contains("kraus")) {
      const json& spec = j["kraus"];
      OutcomeSpace outcomes = OutcomeSpace::line({0.0});
      if (spec.contains("labels_2d")) {
        std::vector<std::array<double, 2>> pairs;
        for (const json& l : spec["labels_2d"]) {
          pairs.push_back({l[0].get<double>(), l[1].get<double>()});
        }
        outcomes = OutcomeSpace::plane(std::move(pairs));
      } else if (spec.contains("labels")) {
        std::vector<double> labels;
        for (const json& l : spec["labels"]) labels.push_back(l.get<double>());
        outcomes = OutcomeSpace::line(std::move(labels));
      } else {
        fail(where + ".kraus", "needs 'labels' or 'labels_2d'");
      }
      std::vector<std::vector<cmat>> ops;
      int s = 0;
      for (const json& list : spec["operators"]) {
        std::vector<cmat> one;
        int t = 0;
        for (const json& m : list) {
          one.push_back(parse_matrix(m, where + ".kraus.operators[" + std::to_string(s) +
                                            "][" + std::to_string(t++) + "]"));
        }
        ops.push_back(std::move(one));
        ++s;
      }
      return KrausInstrument(algebra, std::move(outcomes), std::move(ops));
    }
    if (j.is_object() && j.contains("measuring_process")) {
      MeasuringProcess mp = parse_process(j["measuring_process"], where + ".measuring_process");
      KrausInstrument instr = instrument_from_measuring_process(mp, algebra);
      process_out = std::move(mp);
      return instr;
    }
  } catch (const ResolveError&) {
    throw;
  } catch (const Error& e) {
    fail(where, e.what());
  }
  fail(where, "expected 'builder', 'kraus' or 'measuring_process'");
}

Scenario parse_one(const json& j, double default_tol, int index) {
  const std::string tag = "scenarios[" + std::to_string(index) + "]";
  if (!j.is_object()) fail(tag, "expected an object");
  const std::string name =
      j.contains("name") ? j["name"].get<std::string>() : tag;
  const std::string mode = j.contains("mode") ? j["mode"].get<std::string>()
                                              : std::string("error_disturbance");
  if (mode != "error_disturbance" && mode != "simultaneous") {
    fail(name + ".mode", "expected 'error_disturbance' or 'simultaneous'");
  }
  if (!j.contains("algebra")) fail(name + ".algebra", "missing");
  if (!j.contains("state")) fail(name + ".state", "missing");
  if (!j.contains("observable_a") || !j.contains("observable_b")) {
    fail(name, "needs 'observable_a' and 'observable_b'");
  }
  if (!j.contains("instrument")) fail(name + ".instrument", "missing");

  AlgebraPtr algebra = parse_algebra(j["algebra"], name + ".algebra");
  NormalState state = parse_state(j["state"], algebra, name + ".state");
  AlgebraElement obs_a = parse_observable(j["observable_a"], algebra, name + ".observable_a");
  AlgebraElement obs_b = parse_observable(j["observable_b"], algebra, name + ".observable_b");
  if (!obs_a.is_hermitian() || !obs_b.is_hermitian()) {
    fail(name, "observables must be self-adjoint");
  }
  std::optional<MeasuringProcess> process;
  KrausInstrument instrument =
      parse_instrument(j["instrument"], algebra, obs_a, obs_b, process, name + ".instrument");
  const int want_arity = mode == "simultaneous" ? 2 : 1;
  if (instrument.outcomes().arity() != want_arity) {
    fail(name + ".instrument", "outcome arity does not match mode");
  }

  std::vector<std::string> relations;
  if (j.contains("relations")) {
    for (const json& r : j["relations"]) {
      const std::string rel = r.get<std::string>();
      if (rel != "ozawa" && rel != "branciard" && rel != "strengthened" &&
          rel != "simultaneous") {
        fail(name + ".relations", "unknown relation '" + rel + "'");
      }
      relations.push_back(rel == "simultaneous" ? "strengthened" : rel);
    }
  } else {
    relations = {"ozawa", "branciard", "strengthened"};
  }
  const double tol = j.contains("tolerance") ? j["tolerance"].get<double>() : default_tol;

  return Scenario{name,       mode,  algebra,   std::move(state), std::move(obs_a),
                  std::move(obs_b), std::move(instrument), std::move(process),
                  std::move(relations), tol};
}

}  // namespace

std::vector<Scenario> parse_scenarios(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("scenario file: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("scenarios") || !doc["scenarios"].is_array()) {
    throw ParseError("scenario file: top level must be {\"scenarios\": [...]}");
  }
  const double default_tol =
      doc.contains("tolerance") ? doc["tolerance"].get<double>() : 1e-8;
  std::vector<Scenario> out;
  int index = 0;
  for (const json& j : doc["scenarios"]) {
    out.push_back(parse_one(j, default_tol, index++));
  }
  if (out.empty()) throw ParseError("scenario file: no scenarios");
  return out;
}

std::vector<Scenario> load_scenarios(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open scenario file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenarios(buf.str());
}

namespace {

cvec singlet_vector() {
  cvec v = cvec::Zero(4);
  v[1] = 1.0 / std::sqrt(2.0);
  v[2] = -1.0 / std::sqrt(2.0);
  return v;
}

MeasuringProcess controlled_flip_process() {
  MeasuringProcess mp;
  mp.probe_dim = 2;
  mp.probe_state = cmat::Zero(2, 2);
  mp.probe_state(0, 0) = 1.0;
  mp.outcomes = OutcomeSpace::line({1.0, -1.0});
  cmat p0 = cmat::Zero(2, 2), p1 = cmat::Zero(2, 2);
  p0(0, 0) = 1.0;
  p1(1, 1) = 1.0;
  mp.meter_projections = {p0, p1};
  // Probe flip controlled on the system z-basis.
  cmat u = cmat::Zero(4, 4);
  u(0, 0) = 1.0;
  u(1, 1) = 1.0;
  u(2, 3) = 1.0;
  u(3, 2) = 1.0;
  mp.unitary = u;
  return mp;
}

MeasuringProcess trivial_process(int system_dim, double label) {
  MeasuringProcess mp;
  mp.probe_dim = 1;
  mp.probe_state = cmat::Identity(1, 1);
  mp.outcomes = OutcomeSpace::line({label});
  mp.meter_projections = {cmat::Identity(1, 1)};
  mp.unitary = cmat::Identity(system_dim, system_dim);
  return mp;
}

std::vector<Scenario> make_builtin(const std::string& name) {
  if (name == "example-1-1") {
    const cvec psi = singlet_vector();
    const cmat psi_density = psi * psi.adjoint();

    AlgebraPtr m4 = VonNeumannAlgebra::full(4);
    const cmat sx1 = tensor_product(pauli_x(), identity(2));
    const cmat sy1 = tensor_product(pauli_y(), identity(2));
    Scenario on_m4{"example-1-1-m4",
                   "error_disturbance",
                   m4,
                   restrict_state(m4, psi_density),
                   AlgebraElement(m4, {sx1}),
                   AlgebraElement(m4, {sy1}),
                   trivial_instrument(m4, 0.0),
                   trivial_process(4, 0.0),
                   {"ozawa", "branciard", "strengthened"},
                   1e-8};

    AlgebraPtr m2in4 = VonNeumannAlgebra::make({BlockSpec{2, 2}});
    Scenario on_m2{"example-1-1-m2",
                   "error_disturbance",
                   m2in4,
                   restrict_state(m2in4, psi_density),
                   AlgebraElement(m2in4, {pauli_x()}),
                   AlgebraElement(m2in4, {pauli_y()}),
                   trivial_instrument(m2in4, 0.0),
                   trivial_process(4, 0.0),
                   {"ozawa", "branciard", "strengthened"},
                   1e-8};
    std::vector<Scenario> out;
    out.push_back(std::move(on_m4));
    out.push_back(std::move(on_m2));
    return out;
  }
  if (name == "trivial-instrument-tight") {
    AlgebraPtr m2 = VonNeumannAlgebra::full(2);
    cmat up = cmat::Zero(2, 2);
    up(0, 0) = 1.0;
    std::vector<Scenario> out;
    out.push_back(Scenario{"trivial-instrument-tight",
                           "error_disturbance",
                           m2,
                           NormalState(m2, {up}),
                           AlgebraElement(m2, {pauli_x()}),
                           AlgebraElement(m2, {pauli_y()}),
                           trivial_instrument(m2, 0.0),
                           trivial_process(2, 0.0),
                           {"ozawa", "branciard", "strengthened"},
                           1e-8});
    return out;
  }
  if (name == "projective-spin") {
    AlgebraPtr m2 = VonNeumannAlgebra::full(2);
    cmat up = cmat::Zero(2, 2);
    up(0, 0) = 1.0;
    std::vector<Scenario> out;
    out.push_back(Scenario{"projective-spin",
                           "error_disturbance",
                           m2,
                           NormalState(m2, {up}),
                           AlgebraElement(m2, {pauli_z()}),
                           AlgebraElement(m2, {pauli_x()}),
                           projective_instrument(AlgebraElement(m2, {pauli_z()})),
                           controlled_flip_process(),
                           {"ozawa", "branciard", "strengthened"},
                           1e-8});
    return out;
  }
  if (name == "controlled-flip-meter") {
    AlgebraPtr m2 = VonNeumannAlgebra::full(2);
    cmat plus(2, 2);
    plus << 0.5, 0.5, 0.5, 0.5;  // |x+><x+|
    MeasuringProcess mp = controlled_flip_process();
    std::vector<Scenario> out;
    out.push_back(Scenario{"controlled-flip-meter",
                           "error_disturbance",
                           m2,
                           NormalState(m2, {plus}),
                           AlgebraElement(m2, {pauli_z()}),
                           AlgebraElement(m2, {pauli_y()}),
                           instrument_from_measuring_process(mp, m2),
                           mp,
                           {"ozawa", "branciard", "strengthened"},
                           1e-8});
    return out;
  }
  if (name == "simultaneous-product") {
    AlgebraPtr m2 = VonNeumannAlgebra::full(2);
    cmat up = cmat::Zero(2, 2);
    up(0, 0) = 1.0;
    KrausInstrument first = projective_instrument(AlgebraElement(m2, {pauli_x()}));
    KrausInstrument second = projective_instrument(AlgebraElement(m2, {pauli_z()}));
    std::vector<Scenario> out;
    out.push_back(Scenario{"simultaneous-product",
                           "simultaneous",
                           m2,
                           NormalState(m2, {up}),
                           AlgebraElement(m2, {pauli_x()}),
                           AlgebraElement(m2, {pauli_z()}),
                           sequential_instrument(first, second),
                           std::nullopt,
                           {"ozawa", "branciard", "strengthened"},
                           1e-8});
    return out;
  }
  throw ResolveError("unknown builtin '" + name + "'");
}

}  // namespace

std::vector<std::string> builtin_names() {
  return {"example-1-1", "trivial-instrument-tight", "projective-spin",
          "controlled-flip-meter", "simultaneous-product"};
}

std::vector<Scenario> builtin_scenarios(const std::string& name) { return make_builtin(name); }

UncertaintyReport run_scenario(const Scenario& s) {
  UncertaintyReport r;
  r.name = s.name;
  r.mode = s.mode;
  r.checked_relations = s.relations;
  r.tolerance = s.margin_tolerance;
  r.sigma_a = std_dev(s.obs_a, s.state);
  r.sigma_b = std_dev(s.obs_b, s.state);
  r.c_bound = c_bound(s.obs_a, s.obs_b, s.state);
  r.d_bound = d_bound(s.obs_a, s.obs_b, s.state);
  if (s.mode == "simultaneous") {
    const auto [ea, eb] = simultaneous_errors(s.obs_a, s.obs_b, s.state, s.instrument);
    r.eps_a = ea;
    r.eta_or_eps_b = eb;
  } else {
    r.eps_a = error(s.obs_a, s.state, s.instrument);
    r.eta_or_eps_b = disturbance(s.obs_b, s.state, s.instrument);
  }
  r.margin_ozawa = ozawa_margin(r.eps_a, r.eta_or_eps_b, r.sigma_a, r.sigma_b, r.c_bound);
  r.margin_branciard =
      branciard_margin(r.eps_a, r.eta_or_eps_b, r.sigma_a, r.sigma_b, r.c_bound);
  r.margin_strengthened =
      branciard_margin(r.eps_a, r.eta_or_eps_b, r.sigma_a, r.sigma_b, r.d_bound);
  r.heisenberg_deficit = r.eps_a * r.eta_or_eps_b - r.c_bound;
  return r;
}

}  // namespace edlab
