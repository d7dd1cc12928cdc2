#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <fstream>
#include <iostream>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "qmtl/config.hpp"
#include "qmtl/oracle.hpp"
#include "qmtl/translation.hpp"

namespace qmtl::cli {

struct Options {
  std::string config;
  std::string mode = "contact";
  double budget = 0;
  long long jmax = 4;
  std::string cache;
  bool paper_faithful = false;
  bool full_radius = false;
  unsigned threads = 1;
  bool verbose = false;

  std::string command;
  std::vector<std::string> args;
  std::string relation;  // hyp
  std::string in, out;   // batch
  long long n_max = 12;  // oracle ratio
  std::string edge;      // oracle ratio base hyperplane
};

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
  return q + "\"";
}

inline std::string yes_no(bool b) { return b ? "true" : "false"; }

template <QMBackend B>
class Session {
 public:
  using V = typename B::Vertex;
  using Iso = typename B::Iso;
  using Hyp = HyperplaneHandle<V>;

  Session(const B& X, const Options& o, std::ostream& out) : X_(X), H_(X), o_(o), out_(out) {
    if (!o_.cache.empty()) cache_.load(o_.cache);
  }

  ~Session() {
    if (!o_.cache.empty()) {
      try {
        cache_.save(o_.cache);
      } catch (...) {
      }
    }
  }

  int run() {
    const auto& c = o_.command;
    if (c == "nf") return nf();
    if (c == "eq") return eq();
    if (c == "dist") return dist();
    if (c == "interval") return interval();
    if (c == "hyp") return hyp();
    if (c == "omega-dist") return omega_dist();
    if (c == "classify") return classify();
    if (c == "tlen") return tlen();
    if (c == "diagnose") return diagnose();
    if (c == "batch") return batch();
    if (c == "ratio") return ratio();
    throw ConfigError("unknown command '" + c + "'");
  }

 private:
  void need(std::size_t n) const {
    if (o_.args.size() != n)
      throw ConfigError(o_.command + " expects " + std::to_string(n) + " argument" + (n == 1 ? "" : "s"));
  }

  Hyp edge(const std::string& s) const {
    auto [p, q] = X_.parse_edge(s);
    return H_.hyp(p, q);
  }

  Omega<B> omega() {
    return Omega<B>(H_, parse_mode(o_.mode), o_.cache.empty() ? nullptr : &cache_);
  }

  TranslationOptions topts() const {
    TranslationOptions t;
    t.j_max = o_.jmax;
    t.paper_faithful = o_.paper_faithful;
    t.full_radius = o_.full_radius;
    t.threads = std::max(1u, o_.threads);
    if (o_.budget > 0) t.dynamics.budget = Budget(o_.budget);
    return t;
  }

  int nf() {
    need(1);
    out_ << X_.vertex_str(X_.parse_vertex(o_.args[0])) << "\n";
    return 0;
  }

  int eq() {
    need(2);
    out_ << yes_no(X_.parse_vertex(o_.args[0]) == X_.parse_vertex(o_.args[1])) << "\n";
    return 0;
  }

  int dist() {
    need(2);
    out_ << X_.distance(X_.parse_vertex(o_.args[0]), X_.parse_vertex(o_.args[1])) << "\n";
    return 0;
  }

  int interval() {
    need(2);
    for (const auto& z : X_.interval(X_.parse_vertex(o_.args[0]), X_.parse_vertex(o_.args[1])))
      out_ << X_.vertex_str(z) << "\n";
    return 0;
  }

  int hyp() {
    need(2);
    auto A = edge(o_.args[0]), C = edge(o_.args[1]);
    const auto& r = o_.relation;
    bool v;
    if (r == "same")
      v = H_.same(A, C);
    else if (r == "transverse")
      v = H_.transverse(A, C);
    else if (r == "contact")
      v = H_.in_contact(A, C);
    else if (r == "ss")
      v = H_.strongly_separated(A, C);
    else
      throw ConfigError("hyp relation must be same, transverse, contact or ss");
    out_ << yes_no(v) << "\n";
    return 0;
  }

  std::string hyp_str(const Hyp& K) const { return X_.edge_str(K.rep.tail, K.rep.head); }

  int omega_dist() {
    need(2);
    auto W = omega();
    auto d = W.distance(edge(o_.args[0]), edge(o_.args[1]));
    if (!d.value) {
      out_ << "d = inf\n";
      return 0;
    }
    out_ << "d = " << *d.value << "\n";
    out_ << "chain =";
    for (const auto& K : d.chain) out_ << " " << hyp_str(K);
    out_ << "\n";
    return 0;
  }

  int classify() {
    need(1);
    auto W = omega();
    auto t = topts();
    Dynamics<B> D(W, t.dynamics);
    auto c = D.classify(X_.parse_iso(o_.args[0]), o_.paper_faithful);
    out_ << verdict_name(c.verdict) << " (" << c.method << ")";
    if (c.certificate)
      out_ << "  edge = " << X_.edge_str(c.certificate->edge.tail, c.certificate->edge.head)
           << "  r = " << c.certificate->r;
    out_ << "\n";
    return 0;
  }

  void print_cert(const TranslationCertificate<V>& c) {
    if (c.elliptic) {
      out_ << "tau = 0/1 (elliptic)\n";
    } else {
      out_ << "tau = " << to_string(c.tau) << "  k = " << c.witness_k << "  K = " << hyp_str(*c.witness)
           << "  verified j<=" << c.verified_depth << "\n";
    }
    if (o_.verbose) {
      out_ << "classification = " << c.classification << "\n";
      if (!c.elliptic)
        out_ << "d = " << c.witness_distance << "  M = " << c.hqc << (c.hqc_exact ? "" : " (upper bound)")
             << "  L = " << c.L << "  Q = " << c.Q << "  radius = " << c.radius << "  k_max = " << c.k_max
             << "  candidates = " << c.candidates << "  tau_X = " << to_string(c.tau_X) << "\n";
    }
  }

  int tlen() {
    need(1);
    auto W = omega();
    Translation<B> T(W, topts());
    print_cert(T.run(X_.parse_iso(o_.args[0])));
    return 0;
  }

  int diagnose() {
    need(0);
    const auto& p = X_.profile();
    out_ << "cliques_per_vertex = " << p.n_cliques_per_vertex << "\n";
    out_ << "clique_number = " << p.clique_number << "\n";
    out_ << "crossing_connected = " << yes_no(X_.crossing_connected()) << "\n";
    out_ << "delta_contact = " << to_string(p.delta_contact) << "\n";
    out_ << "delta_crossing = " << to_string(p.delta_crossing) << "\n";
    if (p.qm_delta)
      out_ << "qm_delta = " << *p.qm_delta << "\n";
    else
      out_ << "qm_delta = not hyperbolic\n";
    if (p.denom_bound_hyperbolic)
      out_ << "denom_bound_hyperbolic = " << p.n_cliques_per_vertex << "^" << 8 * *p.qm_delta << "\n";
    if (p.denom_bound_gp)
      out_ << "denom_bound_gp = " << p.n_cliques_per_vertex << "^" << p.denom_bound_gp_exponent.value_or(0) << " = "
           << *p.denom_bound_gp << "\n";
    return 0;
  }

  int batch() {
    need(0);
    if (o_.in.empty() || o_.out.empty()) throw ConfigError("batch needs --in and --out");
    std::ifstream in(o_.in);
    if (!in) throw ConfigError("cannot open '" + o_.in + "'");
    std::vector<std::string> elems;
    for (std::string line; std::getline(in, line);) {
      auto b = line.find_first_not_of(" \t\r"), e = line.find_last_not_of(" \t\r");
      if (b == std::string::npos || line[b] == '#') continue;
      elems.push_back(line.substr(b, e - b + 1));
    }
    auto W = omega();
    auto t = topts();
    const unsigned nt = std::max(1u, std::min<unsigned>(t.threads, static_cast<unsigned>(elems.size())));
    t.threads = 1;  // rows are the unit of parallelism here
    Translation<B> T(W, t);
    std::vector<std::string> rows(elems.size());
    std::atomic<std::size_t> next{0};
    auto work = [&]() {
      for (std::size_t i; (i = next.fetch_add(1)) < elems.size();) {
        auto t0 = std::chrono::steady_clock::now();
        std::string tail, err;
        try {
          auto c = T.run(X_.parse_iso(elems[i]));
          auto num = boost::multiprecision::numerator(c.tau), den = boost::multiprecision::denominator(c.tau);
          std::ostringstream r;
          if (c.elliptic)
            r << "0,1,0,0";
          else
            r << num << "," << den << "," << c.witness_k << "," << c.witness_distance;
          tail = r.str();
          auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0);
          rows[i] = csv_field(elems[i]) + "," + tail + "," + std::to_string(ms.count()) + "," +
                    std::to_string(c.verified_depth) + ",";
        } catch (const std::exception& e) {
          auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0);
          rows[i] = csv_field(elems[i]) + ",,,,," + std::to_string(ms.count()) + ",0," + csv_field(e.what());
        }
      }
    };
    if (nt == 1) {
      work();
    } else {
      std::vector<std::thread> pool;
      for (unsigned k = 0; k < nt; ++k) pool.emplace_back(work);
      for (auto& th : pool) th.join();
    }
    std::ofstream f(o_.out);
    if (!f) throw ConfigError("cannot write '" + o_.out + "'");
    f << "element,tau_num,tau_den,k,d,elapsed_ms,verified,error\n";
    std::size_t errors = 0;
    for (const auto& r : rows) {
      f << r << "\n";
      if (r.back() != ',') ++errors;
    }
    out_ << "rows = " << rows.size() << "  errors = " << errors << "\n";
    return 0;
  }

  int ratio() {
    need(1);
    auto W = omega();
    auto t = topts();
    Dynamics<B> D(W, t.dynamics);
    Hyp J = o_.edge.empty() ? D.base_hyperplane() : edge(o_.edge);
    Iso g = X_.parse_iso(o_.args[0]);
    auto s = oracle::ratio_estimate(
        [&](long long n) {
          t.dynamics.budget.check("ratio estimate");
          return W.displacement_value(J, g, n);
        },
        o_.n_max);
    for (const auto& [n, d] : s.samples) out_ << n << " " << (d ? std::to_string(*d) : std::string("inf")) << "\n";
    if (s.slope)
      out_ << "slope = " << to_string(*s.slope) << " (period " << s.period << ")\n";
    else
      out_ << "slope = undetermined\n";
    return 0;
  }

  const B& X_;
  Hyperplanes<B> H_;
  const Options& o_;
  std::ostream& out_;
  DistanceCache cache_;
};

/// Runs one command line (without the program name). Exit codes: 0 ok,
/// 1 configuration or usage error, 2 budget exceeded, 3 verification failure.
inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Hyperplane geometry and translation lengths for graph products and staircases", "qmtl"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("-c,--config", o.config, "presentation file (JSON)")->required();
  app.add_option("--mode", o.mode, "crossing or contact")->check(CLI::IsMember({"crossing", "contact"}));
  app.add_option("--budget", o.budget, "time budget in seconds (0 = none)");
  app.add_option("--jmax", o.jmax, "verification depth for certificates")->check(CLI::PositiveNumber);
  app.add_option("--cache", o.cache, "distance cache file");
  app.add_flag("--paper-faithful", o.paper_faithful, "classify by the 17-delta displacement test");
  app.add_flag("--full-radius", o.full_radius, "use the large candidate radius");
  app.add_option("--threads", o.threads, "worker threads");
  app.add_flag("-v,--verbose", o.verbose, "print search data");

  auto sub = [&](const char* name, const char* help, const char* pos) {
    auto* s = app.add_subcommand(name, help);
    if (pos) s->add_option(pos, o.args);
    return s;
  };
  sub("nf", "canonical normal form of a word", "word");
  sub("eq", "are two words equal", "words");
  sub("dist", "distance between two vertices", "words");
  sub("interval", "vertices on geodesics between two vertices", "words");
  auto* h = app.add_subcommand("hyp", "relation between the hyperplanes of two edges");
  h->add_option("relation", o.relation)->required()->check(CLI::IsMember({"same", "transverse", "contact", "ss"}));
  h->add_option("edges", o.args);
  sub("omega-dist", "distance in the crossing or contact graph", "edges");
  sub("classify", "elliptic or loxodromic on the crossing/contact graph", "word");
  sub("tlen", "exact asymptotic translation length", "word");
  sub("diagnose", "hyperbolicity constants and bounds", nullptr);
  auto* b = sub("batch", "translation lengths of many elements", nullptr);
  b->add_option("--in", o.in, "one element per line")->required();
  b->add_option("--out", o.out, "CSV output")->required();
  auto* orc = app.add_subcommand("oracle", "brute-force reference values");
  orc->require_subcommand(1);
  auto* ratio = orc->add_subcommand("ratio", "samples of d(J, g^n J) and their slope");
  ratio->add_option("--n", o.n_max, "largest power")->check(CLI::Range(2, 100000));
  ratio->add_option("--edge", o.edge, "edge naming the base hyperplane");
  ratio->add_option("word", o.args);
  ratio->fallthrough();

  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  for (auto* s : app.get_subcommands()) {
    o.command = s->get_name();
    if (o.command == "oracle") o.command = s->get_subcommands().front()->get_name();
  }

  try {
    auto cfg = load_config(o.config);
    if (cfg.staircase) {
      Staircase X(*cfg.staircase);
      return Session<Staircase>(X, o, out).run();
    }
    GraphProduct X(*cfg.presentation);
    return Session<GraphProduct>(X, o, out).run();
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const BudgetExceeded& e) {
    err << "budget exceeded: " << e.what() << "\n";
    return 2;
  } catch (const VerificationFailure& e) {
    err << "verification failed: " << e.what() << "\n";
    return 3;
  } catch (const ContractViolation& e) {
    err << "internal error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace qmtl::cli
