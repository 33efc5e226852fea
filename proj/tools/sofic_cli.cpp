#include <atomic>
#include <charconv>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "sofic/amplify.hpp"
#include "sofic/ball.hpp"
#include "sofic/certificate.hpp"
#include "sofic/colored_graph.hpp"
#include "sofic/constructions.hpp"
#include "sofic/errors.hpp"
#include "sofic/folner.hpp"
#include "sofic/matching.hpp"
#include "sofic/paradox.hpp"

namespace sofic {
namespace {

using nlohmann::json;

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitMalformed = 2;

class IoError : public Error {
 public:
  using Error::Error;
};

std::string read_file(const std::string& path) {
  if (path == "-") {
    std::ostringstream buf;
    buf << std::cin.rdbuf();
    return buf.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IoError("cannot read '" + path + "'");
  return buf.str();
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << text;
  out.close();
  if (!out) throw IoError("cannot write '" + path + "'");
}

json parse_json(const std::string& text, const std::string& origin) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw MalformedInput(origin + ": " + e.what());
  }
}

std::string dump(const json& doc) { return doc.dump(2) + "\n"; }

// Shortest round-trip decimal.
std::string decimal(double x) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, end);
}

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

struct FamilyOptions {
  std::string family = "z";
  int rank = 0;
  std::string table;

  void add_to(CLI::App* cmd, bool with_finite = true) {
    cmd->add_option("--family", family, with_finite ? "z, z2, zd, heisenberg, free or finite" : "z, z2, zd, heisenberg or free")
        ->capture_default_str();
    cmd->add_option("--rank", rank, "free rank or zd dimension");
    if (with_finite) cmd->add_option("--table", table, "finite group table JSON (family finite)");
  }

  GroupBackend backend() const {
    if (family == "finite") {
      if (table.empty()) throw InvalidArgument("family finite needs --table");
      return GroupBackend::finite(FiniteGroup::from_json(parse_json(read_file(table), table)));
    }
    return backend_from_family(family, rank);
  }
};

// ---- ball

struct BallCommand {
  FamilyOptions family;
  int radius = 2;
  bool words = false;

  int run(const Limits& limits) const {
    const auto backend = std::make_shared<const GroupBackend>(family.backend());
    const BallTable b = ball(backend, radius, limits);
    std::vector<std::size_t> spheres(static_cast<std::size_t>(radius) + 1, 0);
    for (std::size_t i = 0; i < b.size(); ++i) ++spheres[b.length(i)];
    std::size_t products = 0;
    b.for_each_product([&](std::size_t, std::size_t, std::size_t) { ++products; });
    json out{{"group", backend->descriptor()},
             {"radius", radius},
             {"size", b.size()},
             {"sphereSizes", spheres},
             {"definedProducts", products}};
    const Rational expansion = ball_expansion(b);
    out["expansion"] = to_string(expansion);
    out["expansionValue"] = to_double(expansion);
    if (words) {
      json list = json::array();
      for (std::size_t i = 0; i < b.size(); ++i) list.push_back(backend->alphabet().format(b.word(i)));
      out["words"] = list;
    }
    std::cout << dump(out);
    return kExitPass;
  }
};

// ---- certify

struct CertifyCommand {
  FamilyOptions family;
  int radius = 2;
  int folner = 0;
  std::uint32_t modulus = 0;
  int witness_radius = 0;
  std::string output;

  int run(const Limits& limits) const {
    const Certificate cert = build(limits);
    write_output(output, cert.serialize());
    return kExitPass;
  }

  Certificate build(const Limits& limits) const {
    if (family.family == "free") {
      if (family.rank != 0 && family.rank != 2) throw InvalidArgument("free certificates are built for rank 2 only");
      return free_sofic_certificate(radius, limits, witness_radius);
    }
    if (family.family == "finite") return finite_certificate(family.backend().finite_group(), radius, limits);
    if (family.family == "z" && modulus != 0) {
      if (folner != 0) throw InvalidArgument("--folner and --modulus are exclusive");
      return cyclic_lef_certificate(radius, modulus, limits);
    }
    if (folner <= 0) throw InvalidArgument("family " + family.family + " needs --folner L (or --modulus for z)");
    return folner_certificate(std::make_shared<const GroupBackend>(family.backend()), folner, radius, limits);
  }
};

// ---- verify

struct VerifyCommand {
  std::vector<std::string> files;
  std::optional<double> eps;
  std::optional<double> delta;
  unsigned jobs = 1;
  bool trace_diagnostic = false;

  struct Outcome {
    int code = kExitPass;
    json report;
  };

  static UnitaryMatrix image(const AlmostHom& j, std::size_t i) {
    return j.kind() == TargetKind::kSym ? perm_matrix(j.permutations()[i]) : j.unitaries()[i];
  }

  // Both normalizations of the trace formula against the entrywise distance.
  static json trace_readings(const UnitaryMatrix& u, const UnitaryMatrix& v) {
    return json{{"entrywise", hs_distance(u, v)},
                {"traceOneOverN", hs_distance_trace(u, v)},
                {"traceInvSqrtN", hs_distance_trace_sqrt_normalized(u, v)}};
  }

  static json diagnostic(const Certificate& cert, const VerificationReport& report) {
    const AlmostHom& j = cert.map;
    json out = json::object();
    if (report.defect.worst) {
      const auto [g, h] = *report.defect.worst;
      if (auto gh = j.domain().product(g, h)) out["defect"] = trace_readings(image(j, g) * image(j, h), image(j, *gh));
    }
    if (report.separation.worst) {
      const auto [g, h] = *report.separation.worst;
      out["separation"] = trace_readings(image(j, g), image(j, h));
    }
    return out;
  }

  Outcome check(const std::string& path, const Limits& limits) const {
    Outcome outcome;
    outcome.report = json{{"file", path}};
    try {
      const Certificate cert = Certificate::parse(read_file(path), limits);
      double e = 0.0;
      double d = 0.0;
      if (eps && delta) {
        e = *eps;
        d = *delta;
      } else if (auto recorded = recorded_verify_parameters(cert.provenance)) {
        e = eps.value_or(recorded->eps);
        d = delta.value_or(recorded->delta);
      } else {
        throw InvalidArgument("no --eps/--delta given and none recorded in the provenance");
      }
      const VerificationReport report = verify(cert, e, d);
      outcome.report.update(report.to_json(cert.map.domain()));
      if (trace_diagnostic) outcome.report["traceDiagnostic"] = diagnostic(cert, report);
      outcome.code = report.passed ? kExitPass : kExitFail;
    } catch (const Error& err) {
      outcome.code = kExitMalformed;
      outcome.report["passed"] = false;
      outcome.report["error"] = err.what();
    }
    return outcome;
  }

  int run(const Limits& limits) const {
    if (eps && *eps <= 0.0) throw InvalidArgument("--eps must be positive");
    if (delta && *delta < 0.0) throw InvalidArgument("--delta must be nonnegative");
    std::vector<Outcome> outcomes(files.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
      for (std::size_t i = next++; i < files.size(); i = next++) outcomes[i] = check(files[i], limits);
    };
    const unsigned threads = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(files.size())));
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();

    int code = kExitPass;
    for (const auto& o : outcomes) code = std::max(code, o.code);
    for (const auto& o : outcomes) {
      if (o.report.contains("error")) std::cerr << "sofic: " << o.report["file"].get<std::string>() << ": " << o.report["error"].get<std::string>() << "\n";
    }
    if (outcomes.size() == 1) {
      std::cout << dump(outcomes.front().report);
    } else {
      json merged{{"passed", code == kExitPass}, {"reports", json::array()}};
      for (auto& o : outcomes) merged["reports"].push_back(std::move(o.report));
      std::cout << dump(merged);
    }
    return code;
  }
};

Certificate load_certificate(const std::string& path, const Limits& limits) {
  return Certificate::parse(read_file(path), limits);
}

Certificate as_unitary(const Certificate& cert, const Limits& limits) {
  return cert.map.kind() == TargetKind::kSym ? sofic_to_hyperlinear(cert, limits) : cert;
}

// ---- amplify

struct AmplifyCommand {
  std::string input;
  int times = 1;
  std::string output;

  int run(const Limits& limits) const {
    const Certificate cert = as_unitary(load_certificate(input, limits), limits);
    const Certificate amplified = amplify_certificate(cert, times, limits);
    const AmplificationReport report = amplification_report(cert.map.unitaries(), times);
    std::cout << dump(report.to_json());
    if (!output.empty()) write_output(output, amplified.serialize());
    return kExitPass;
  }
};

// ---- to-unitary

struct ToUnitaryCommand {
  std::string input;
  std::string output;

  int run(const Limits& limits) const {
    const Certificate cert = load_certificate(input, limits);
    if (cert.map.kind() != TargetKind::kSym) throw InvalidArgument("certificate already has unitary targets");
    write_output(output, sofic_to_hyperlinear(cert, limits).serialize());
    return kExitPass;
  }
};

// ---- graph / from-graph / match-fraction

struct GraphCommand {
  std::string input;
  std::string output;
  std::string format;

  int run(const Limits& limits) const {
    const ColoredGraph graph = cert_to_graph(load_certificate(input, limits).map);
    const bool dot = format.empty() ? ends_with(output, ".dot") : format == "dot";
    if (!format.empty() && format != "dot" && format != "json") throw InvalidArgument("--format must be json or dot");
    write_output(output, dot ? graph.to_dot() : dump(graph.to_json()));
    return kExitPass;
  }
};

ColoredGraph load_graph(const std::string& path) { return ColoredGraph::from_json(parse_json(read_file(path), path)); }

struct FromGraphCommand {
  std::string input;
  FamilyOptions family;
  int radius = 1;
  std::string output;

  int run(const Limits& limits) const {
    const ColoredGraph graph = load_graph(input);
    auto domain = std::make_shared<const BallTable>(ball(std::make_shared<const GroupBackend>(family.backend()), radius, limits));
    const GraphAlmostHom j = graph_to_almosthom(graph, domain);
    std::string provenance = "coloured graph " + input + " on " + domain->backend().name() + " B_" + std::to_string(radius);
    if (j.filled) provenance += " (partial, filled in canonical order)";
    write_output(output, certify(j.map, provenance).serialize());
    return kExitPass;
  }
};

struct MatchFractionCommand {
  std::string input;
  FamilyOptions family;
  int radius = 1;
  std::size_t samples = 10;

  int run(const Limits& limits) const {
    const ColoredGraph graph = load_graph(input);
    const BallTable reference = ball(std::make_shared<const GroupBackend>(family.backend()), radius, limits);
    std::cout << dump(local_match_fraction(graph, radius, reference, samples).to_json());
    return kExitPass;
  }
};

// ---- folner

struct FolnerCommand {
  FamilyOptions family;
  int side = 4;

  int run(const Limits& limits) const {
    const auto backend = std::make_shared<const GroupBackend>(family.backend());
    json out{{"group", backend->descriptor()}, {"side", side}};
    if (backend->kind() == BackendKind::kFree) {
      // No Folner boxes: report the expansion of the ball of radius `side`.
      const Rational e = ball_expansion(ball(backend, side, limits));
      out["set"] = "ball";
      out["size"] = free_ball_size(backend->rank(), side);
      out["defect"] = to_string(e);
      out["defectValue"] = to_double(e);
      std::cout << dump(out);
      return kExitPass;
    }
    const FolnerSet phi = folner_box(backend, side, limits);
    std::vector<GroupElement> generators;
    json reiter = json::object();
    for (Letter l : backend->alphabet().signed_letters()) {
      generators.push_back(backend->letter(l));
      const Rational r = reiter_norm(phi, generators.back());
      reiter[backend->alphabet().letter_name(l)] = to_string(r);
    }
    const Rational d = folner_defect(phi, generators);
    out["set"] = "box";
    out["size"] = phi.size();
    out["defect"] = to_string(d);
    out["defectValue"] = to_double(d);
    out["reiter"] = reiter;
    std::cout << dump(out);
    return kExitPass;
  }
};

// ---- hall

struct HallCommand {
  std::string input;

  int run(const Limits&) const {
    const BipartiteGraph graph = BipartiteGraph::from_json(parse_json(read_file(input), input));
    const MatchingResult result = two_one_matching(graph);
    std::cout << dump(matching_result_json(result));
    return std::holds_alternative<TwoOneMatching>(result) ? kExitPass : kExitFail;
  }
};

// ---- paradox

struct ParadoxCommand {
  int radius = 3;
  std::optional<int> matching_k;

  int run(const Limits& limits) const {
    const ParadoxReport report = paradox_verify(radius, limits);
    json out{{"decomposition", report.to_json()}};
    bool ok = report.ok();
    if (matching_k) {
      const MatchingParadoxReport m = paradox_from_matching(radius, *matching_k, GroupBackend::free(2), limits);
      out["matching"] = m.to_json();
      ok = ok && m.feasible && m.covers && m.disjoint;
    }
    std::cout << dump(out);
    return ok ? kExitPass : kExitFail;
  }
};

// ---- demo

struct SInfinityCommand {
  int k = 3;
  bool as_json = false;

  int run(const Limits&) const {
    const SInfinityDemo demo = sinfty_demo(k);
    if (as_json) {
      std::cout << dump(json{{"k", k},
                             {"dx", to_string(demo.dx)},
                             {"dxValue", to_double(demo.dx)},
                             {"dconj", to_string(demo.dconj)},
                             {"dconjValue", to_double(demo.dconj)}});
    } else {
      std::cout << "d(x_k, e) = " << decimal(to_double(demo.dx)) << "  (" << to_string(demo.dx) << ")\n"
                << "d(y_k^-1 x_k y_k, e) = " << decimal(to_double(demo.dconj)) << "  (" << to_string(demo.dconj)
                << ")\n";
    }
    return kExitPass;
  }
};

struct AmplifyDemoCommand {
  std::size_t rank = 2;
  std::size_t count = 3;
  int times = 2;
  std::uint64_t seed = 1;

  int run(const Limits& limits) const {
    std::size_t out_rank = rank;
    for (int t = 0; t < times; ++t) {
      out_rank *= out_rank;
      if (out_rank > limits.max_matrix_rank) throw ResourceLimitExceeded("amplified rank exceeds the cap of " + std::to_string(limits.max_matrix_rank));
    }
    std::mt19937_64 rng(seed);
    std::vector<UnitaryMatrix> matrices;
    for (std::size_t i = 0; i < count; ++i) matrices.push_back(random_unitary(rank, rng));
    json out = amplification_report(matrices, times).to_json();
    out["seed"] = seed;
    std::cout << dump(out);
    return kExitPass;
  }
};

int run(int argc, char** argv) {
  CLI::App app{"Finite metric approximations of groups: sofic and hyperlinear certificates."};
  app.require_subcommand(1);
  app.fallthrough();
  const Limits limits = Limits::from_environment();

  BallCommand ball_cmd;
  auto* ball_app = app.add_subcommand("ball", "ball statistics");
  ball_cmd.family.add_to(ball_app);
  ball_app->add_option("--radius,-N", ball_cmd.radius)->capture_default_str();
  ball_app->add_flag("--words", ball_cmd.words, "list the shortlex words");

  CertifyCommand certify_cmd;
  auto* certify_app = app.add_subcommand("certify", "emit a certificate");
  certify_cmd.family.add_to(certify_app);
  certify_app->add_option("--radius,-N", certify_cmd.radius)->capture_default_str();
  certify_app->add_option("--folner,-L", certify_cmd.folner, "Folner box side");
  certify_app->add_option("--modulus", certify_cmd.modulus, "z only: reduce mod m");
  certify_app->add_option("--witness-radius", certify_cmd.witness_radius, "free only: injectivity radius for the prime");
  certify_app->add_option("-o,--output", certify_cmd.output);

  VerifyCommand verify_cmd;
  auto* verify_app = app.add_subcommand("verify", "verify certificates (exit 0 pass, 1 fail, 2 malformed)");
  verify_app->add_option("files", verify_cmd.files)->required();
  verify_app->add_option("--eps", verify_cmd.eps, "defect bound (default: recorded)");
  verify_app->add_option("--delta", verify_cmd.delta, "separation bound (default: recorded)");
  verify_app->add_option("--jobs,-j", verify_cmd.jobs)->capture_default_str();
  verify_app->add_flag("--trace-diagnostic", verify_cmd.trace_diagnostic,
                       "distances of the worst pairs under both trace normalizations");

  AmplifyCommand amplify_cmd;
  auto* amplify_app = app.add_subcommand("amplify", "tensor-square amplification report");
  amplify_app->add_option("certificate", amplify_cmd.input)->required();
  amplify_app->add_option("--times,-k", amplify_cmd.times)->capture_default_str();
  amplify_app->add_option("-o,--output", amplify_cmd.output, "write the amplified certificate");

  ToUnitaryCommand to_unitary_cmd;
  auto* to_unitary_app = app.add_subcommand("to-unitary", "permutation matrices of a sym certificate");
  to_unitary_app->add_option("certificate", to_unitary_cmd.input)->required();
  to_unitary_app->add_option("-o,--output", to_unitary_cmd.output);

  GraphCommand graph_cmd;
  auto* graph_app = app.add_subcommand("graph", "coloured graph of a sym certificate");
  graph_app->add_option("certificate", graph_cmd.input)->required();
  graph_app->add_option("-o,--output", graph_cmd.output, "*.dot writes DOT, anything else JSON");
  graph_app->add_option("--format", graph_cmd.format, "json or dot");

  FromGraphCommand from_graph_cmd;
  auto* from_graph_app = app.add_subcommand("from-graph", "certificate read off a coloured graph");
  from_graph_app->add_option("graph", from_graph_cmd.input)->required();
  from_graph_cmd.family.add_to(from_graph_app);
  from_graph_app->add_option("--radius,-N", from_graph_cmd.radius)->capture_default_str();
  from_graph_app->add_option("-o,--output", from_graph_cmd.output);

  MatchFractionCommand match_cmd;
  auto* match_app = app.add_subcommand("match-fraction", "fraction of vertices with a correct N-ball");
  match_app->add_option("graph", match_cmd.input)->required();
  match_cmd.family.add_to(match_app);
  match_app->add_option("--radius,-N", match_cmd.radius)->capture_default_str();
  match_app->add_option("--samples", match_cmd.samples, "failing vertices to list")->capture_default_str();

  FolnerCommand folner_cmd;
  auto* folner_app = app.add_subcommand("folner", "Folner box defect and Reiter norms");
  folner_cmd.family.add_to(folner_app, false);
  folner_app->add_option("-L,--side", folner_cmd.side)->capture_default_str();

  HallCommand hall_cmd;
  auto* hall_app = app.add_subcommand("hall", "(2,1)-matching or a Hall deficiency witness");
  hall_app->add_option("graph", hall_cmd.input)->required();

  ParadoxCommand paradox_cmd;
  auto* paradox_app = app.add_subcommand("paradox", "paradoxical decomposition of F2 on a ball");
  paradox_app->add_option("--radius,-N", paradox_cmd.radius)->capture_default_str();
  paradox_app->add_option("--matching-k", paradox_cmd.matching_k, "also derive pieces from a (2,1)-matching");

  auto* demo_app = app.add_subcommand("demo", "demonstrations");
  demo_app->require_subcommand(1);
  SInfinityCommand sinfty_cmd;
  auto* sinfty_app = demo_app->add_subcommand("sinfty", "left-invariant metric on S_infinity is not conjugation invariant");
  sinfty_app->add_option("--k,-k", sinfty_cmd.k)->capture_default_str();
  sinfty_app->add_flag("--json", sinfty_cmd.as_json);
  AmplifyDemoCommand amp_demo_cmd;
  auto* amp_demo_app = demo_app->add_subcommand("amplify", "amplification of seeded random unitaries");
  amp_demo_app->add_option("--rank,-n", amp_demo_cmd.rank)->capture_default_str();
  amp_demo_app->add_option("--count", amp_demo_cmd.count)->capture_default_str();
  amp_demo_app->add_option("--times,-k", amp_demo_cmd.times)->capture_default_str();
  amp_demo_app->add_option("--seed", amp_demo_cmd.seed)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitMalformed;
  }

  try {
    if (ball_app->parsed()) return ball_cmd.run(limits);
    if (certify_app->parsed()) return certify_cmd.run(limits);
    if (verify_app->parsed()) return verify_cmd.run(limits);
    if (amplify_app->parsed()) return amplify_cmd.run(limits);
    if (to_unitary_app->parsed()) return to_unitary_cmd.run(limits);
    if (graph_app->parsed()) return graph_cmd.run(limits);
    if (from_graph_app->parsed()) return from_graph_cmd.run(limits);
    if (match_app->parsed()) return match_cmd.run(limits);
    if (folner_app->parsed()) return folner_cmd.run(limits);
    if (hall_app->parsed()) return hall_cmd.run(limits);
    if (paradox_app->parsed()) return paradox_cmd.run(limits);
    if (sinfty_app->parsed()) return sinfty_cmd.run(limits);
    if (amp_demo_app->parsed()) return amp_demo_cmd.run(limits);
  } catch (const Error& e) {
    std::cerr << "sofic: " << e.what() << "\n";
    return kExitMalformed;
  } catch (const json::exception& e) {
    std::cerr << "sofic: malformed JSON: " << e.what() << "\n";
    return kExitMalformed;
  }
  return kExitMalformed;
}

}  // namespace
}  // namespace sofic

int main(int argc, char** argv) { return sofic::run(argc, argv); }
