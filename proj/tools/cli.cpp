#include "cli.hpp"

#include <cstdio>
#include <cstdlib>
#include <functional>
#include <optional>
#include <ostream>
#include <thread>

#include <CLI11.hpp>

#include "etf_forge/catalog.hpp"
#include "etf_forge/error.hpp"
#include "etf_forge/io.hpp"
#include "etf_forge/search.hpp"
#include "etf_forge/signature.hpp"
#include "etf_forge/synthesis.hpp"

namespace etf::cli {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

Epsilon parse_epsilon(const std::string& text) {
  if (text == "+1" || text == "1") return Epsilon::plus;
  if (text == "-1") return Epsilon::minus;
  throw UsageError("--epsilon must be +1 or -1, got '" + text + "'");
}

void print_certificate(std::ostream& out, const Certificate& cert) {
  out << "d=" << cert.d << "\n"
      << "n=" << cert.n << "\n"
      << "mu_target=" << num(cert.mu_target) << "\n"
      << "coherence=" << num(cert.coherence) << "\n"
      << "equiangularity_dev=" << num(cert.equiangularity_dev) << "\n"
      << "tightness_residual=" << num(cert.tightness_residual) << "\n"
      << "tolerance=" << num(cert.tolerance) << "\n"
      << "pass=" << (cert.pass ? "true" : "false") << "\n";
}

void print_signature(std::ostream& out, std::size_t d, std::size_t n, double c) {
  out << "d=" << d << "\n"
      << "n=" << n << "\n"
      << "c=" << num(c) << "\n";
}

bool is_io_code(const std::string& code) {
  return code == "io" || code == "bad_header" || code == "bad_entry" || code == "dim_mismatch";
}

// Order m = 2^j (q+1) with q a prime congruent to 3 mod 4.
SkewHadamard hadamard_for_order(std::size_t m) {
  if (m < 4) throw UsageError("--m must be at least 4");
  const auto plan = plan_size(m - 1);
  if (!plan || plan->k != 0) {
    throw UsageError("order " + std::to_string(m) + " is not 2^j (q+1) for a prime q = 3 mod 4; use --import");
  }
  SkewHadamard h = paley_skew_hadamard(plan->paley_q);
  for (std::size_t i = 0; i < plan->j; ++i) h = double_hadamard(h);
  return h;
}

unsigned search_threads() {
  if (const char* env = std::getenv("ETF_FORGE_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v > 0) return static_cast<unsigned>(v);
  }
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Equiangular tight frames from skew Hadamard matrices", "etf_forge"};
  app.require_subcommand(1);

  std::function<int()> action;
  std::string in_path;
  std::string out_path;
  std::string json_path;
  std::string complement_path;
  std::string epsilon_text = "+1";

  // hadamard
  auto* had = app.add_subcommand("hadamard", "Skew Hadamard matrices")->require_subcommand(1);
  std::uint64_t q = 0;
  auto* had_paley = had->add_subcommand("paley", "Paley construction for a prime q = 3 mod 4");
  had_paley->add_option("--q", q, "prime q, 3 mod 4")->required();
  had_paley->add_option("-o", out_path, "output .had path")->required();
  had_paley->callback([&] {
    action = [&] {
      const SkewHadamard h = paley_skew_hadamard(q);
      io::write_hadamard(out_path, h);
      out << "order=" << h.order() << "\n";
      return 0;
    };
  });

  auto* had_double = had->add_subcommand("double", "Hadamard doubling to order 2m");
  had_double->add_option("-i", in_path, "input .had path")->required();
  had_double->add_option("-o", out_path, "output .had path")->required();
  had_double->callback([&] {
    action = [&] {
      const SkewHadamard h = double_hadamard(io::read_hadamard(in_path));
      io::write_hadamard(out_path, h);
      out << "order=" << h.order() << "\n";
      return 0;
    };
  });

  auto* had_verify = had->add_subcommand("verify", "Exact Hadamard and skewness check");
  had_verify->add_option("-i", in_path, "input .had path")->required();
  had_verify->callback([&] {
    action = [&] {
      const io::RawHadamard raw = io::read_hadamard_raw(in_path);
      const bool hadamard = is_hadamard(raw.order, raw.entries);
      const bool skew = is_skew(raw.order, raw.entries);
      out << "order=" << raw.order << "\n"
          << "hadamard=" << (hadamard ? "true" : "false") << "\n"
          << "skew=" << (skew ? "true" : "false") << "\n";
      return hadamard && skew ? 0 : 1;
    };
  });

  // sig
  auto* sig = app.add_subcommand("sig", "Signature matrices")->require_subcommand(1);
  auto* sig_strohmer = sig->add_subcommand("strohmer", "alpha A + conj(alpha) A^T from a skew Hadamard core");
  sig_strohmer->add_option("-i", in_path, "input .had path")->required();
  sig_strohmer->add_option("-o", out_path, "output matrix path")->required();
  sig_strohmer->callback([&] {
    action = [&] {
      const SkewHadamard h = io::read_hadamard(in_path);
      const SignatureMatrix s = strohmer_signature(core_adjacency(h), h.order());
      io::write_matrix(out_path, s.matrix());
      print_signature(out, s.d(), s.n(), s.c());
      return 0;
    };
  });

  auto* sig_conf = sig->add_subcommand("conference", "i (H - I) from a skew Hadamard");
  sig_conf->add_option("-i", in_path, "input .had path")->required();
  sig_conf->add_option("-o", out_path, "output matrix path")->required();
  sig_conf->callback([&] {
    action = [&] {
      const SignatureMatrix s = conference_signature(io::read_hadamard(in_path));
      io::write_matrix(out_path, s.matrix());
      print_signature(out, s.d(), s.n(), s.c());
      return 0;
    };
  });

  auto* sig_double = sig->add_subcommand("double", "Block doubling of a signature matrix");
  sig_double->add_option("-i", in_path, "input matrix path")->required();
  sig_double->add_option("--epsilon", epsilon_text, "+1 or -1");
  sig_double->add_option("-o", out_path, "output matrix path")->required();
  sig_double->callback([&] {
    action = [&] {
      const Epsilon eps = parse_epsilon(epsilon_text);
      const SignatureMatrix s = double_signature(SignatureMatrix::certify(io::read_matrix(in_path)), eps);
      io::write_matrix(out_path, s.matrix());
      print_signature(out, s.d(), s.n(), s.c());
      return 0;
    };
  });

  auto* sig_verify = sig->add_subcommand("verify", "Check the signature-matrix conditions");
  sig_verify->add_option("-i", in_path, "input matrix path")->required();
  sig_verify->callback([&] {
    action = [&] {
      const ComplexMatrix m = io::read_matrix(in_path);
      try {
        const SignatureInfo info = verify_signature(m);
        print_signature(out, info.d, info.n, info.c);
        out << "residual=" << num(info.residual) << "\n"
            << "valid=true\n";
        return 0;
      } catch (const Error& e) {
        if (is_io_code(e.code())) throw;
        out << "valid=false\n"
            << "reason=" << e.code() << "\n";
        err << e.what() << "\n";
        return 1;
      }
    };
  });

  // etf
  auto* etf_cmd = app.add_subcommand("etf", "Frames")->require_subcommand(1);
  double tol = kDefaultTolerance;

  auto* etf_synth = etf_cmd->add_subcommand("synth", "Factor I + mu S into a frame");
  etf_synth->add_option("-i", in_path, "signature matrix path")->required();
  etf_synth->add_option("-o", out_path, "output frame path")->required();
  etf_synth->callback([&] {
    action = [&] {
      const SignatureMatrix s = SignatureMatrix::certify(io::read_matrix(in_path));
      const Frame f = factor_gram(gram_from_signature(s), s.d());
      io::write_matrix(out_path, f.vectors);
      err << "renormalization correction " << num(f.renorm_correction) << "\n";
      out << "d=" << f.d() << "\n"
          << "n=" << f.n() << "\n";
      return 0;
    };
  });

  auto* etf_naimark = etf_cmd->add_subcommand("naimark", "Naimark complement of an ETF");
  etf_naimark->add_option("-i", in_path, "input frame path")->required();
  etf_naimark->add_option("-o", out_path, "output frame path")->required();
  etf_naimark->callback([&] {
    action = [&] {
      const Frame f = Frame::checked(io::read_matrix(in_path), in_path);
      const Frame g = naimark_complement(f);
      io::write_matrix(out_path, g.vectors);
      out << "d=" << g.d() << "\n"
          << "n=" << g.n() << "\n";
      return 0;
    };
  });

  auto* etf_double = etf_cmd->add_subcommand("double", "Double a d x n ETF to n x 2n");
  etf_double->add_option("-i", in_path, "input frame path")->required();
  etf_double->add_option("--complement", complement_path, "Naimark complement path")->required();
  etf_double->add_option("--epsilon", epsilon_text, "+1 or -1");
  etf_double->add_option("-o", out_path, "output frame path")->required();
  etf_double->callback([&] {
    action = [&] {
      const Epsilon eps = parse_epsilon(epsilon_text);
      const Frame f = Frame::checked(io::read_matrix(in_path), in_path);
      const Frame g = Frame::checked(io::read_matrix(complement_path), complement_path);
      const Frame phi = double_etf(f, g, eps);
      io::write_matrix(out_path, phi.vectors);
      out << "d=" << phi.d() << "\n"
          << "n=" << phi.n() << "\n";
      return 0;
    };
  });

  auto* etf_verify = etf_cmd->add_subcommand("verify", "Certify a frame against the Welch bound");
  etf_verify->add_option("-i", in_path, "input frame path")->required();
  etf_verify->add_option("--tol", tol, "absolute tolerance");
  etf_verify->add_option("--json", json_path, "certificate output path");
  etf_verify->callback([&] {
    action = [&] {
      const ComplexMatrix m = io::read_matrix(in_path);
      bool unit = true;
      Frame f;
      try {
        f = Frame::checked(m, in_path);
      } catch (const Error& e) {
        if (e.code() != "not_unit_norm") throw;
        err << e.what() << "\n";
        unit = false;
        f = Frame{m, in_path, 0.0};
      }
      const Certificate cert = verify_etf(f, tol);
      print_certificate(out, cert);
      out << "unit_norm=" << (unit ? "true" : "false") << "\n";
      if (!json_path.empty()) io::write_certificate(json_path, cert);
      return cert.pass && unit ? 0 : 1;
    };
  });

  // build
  std::size_t build_m = 0;
  std::string import_path;
  auto* build = app.add_subcommand("build", "(m-1) x 2(m-1) ETF from a skew Hadamard of order m");
  auto* build_m_opt = build->add_option("--m", build_m, "order 2^j (q+1), q prime = 3 mod 4");
  auto* build_import_opt = build->add_option("--import", import_path, "skew Hadamard file");
  build_m_opt->excludes(build_import_opt);
  build->add_option("-o", out_path, "output frame path")->required();
  build->callback([&] {
    action = [&] {
      if (build_m == 0 && import_path.empty()) throw UsageError("build needs --m or --import");
      const SkewHadamard h = import_path.empty() ? hadamard_for_order(build_m) : io::read_hadamard(import_path);
      const Frame f = build_skew_etf(h);
      io::write_matrix(out_path, f.vectors);
      const Certificate cert = verify_etf(f);
      print_certificate(out, cert);
      return cert.pass ? 0 : 1;
    };
  });

  // search
  SearchConfig cfg;
  auto* search = app.add_subcommand("search", "Numerical search")->require_subcommand(1);
  auto* search_ap = search->add_subcommand("ap", "Alternating projections");
  search_ap->add_option("--d", cfg.d, "dimension")->required();
  search_ap->add_option("--n", cfg.n, "number of vectors")->required();
  search_ap->add_option("--seed", cfg.seed, "base seed");
  search_ap->add_option("--restarts", cfg.restarts, "independent restarts");
  search_ap->add_option("--iters", cfg.max_iters, "iterations per restart");
  search_ap->add_option("--json", json_path, "certificate output path");
  search_ap->add_option("-o", out_path, "best frame output path");
  search_ap->callback([&] {
    action = [&] {
      cfg.threads = search_threads();
      const SearchResult result = alternating_projections(cfg);
      for (std::size_t r = 0; r < result.restarts.size(); ++r) {
        const auto& o = result.restarts[r];
        err << "restart " << r << ": coherence " << num(o.best_coherence) << " after " << o.iterations << " iterations"
            << (o.converged ? " (converged)" : "") << (o.abandoned ? " abandoned: " + o.note : "") << "\n";
      }
      const Certificate cert = search_report(result);
      out << "best_coherence=" << num(result.best_coherence) << "\n"
          << "restart_index=" << result.restart_index << "\n"
          << "iterations_used=" << result.iterations_used << "\n"
          << "converged=" << (result.converged ? "true" : "false") << "\n";
      print_certificate(out, cert);
      if (!json_path.empty()) io::write_certificate(json_path, cert);
      if (!out_path.empty()) io::write_matrix(out_path, result.best_frame.vectors);
      return cert.pass ? 0 : 1;
    };
  });

  // catalog
  std::size_t max_d = 0;
  std::vector<std::string> imports;
  auto* catalog = app.add_subcommand("catalog", "Plan and certify d x 2d sizes");
  catalog->add_option("--max-d", max_d, "largest d")->required();
  catalog->add_option("--import", imports, "skew Hadamard files");
  catalog->add_option("-o", out_path, "TSV output path")->required();
  catalog->callback([&] {
    action = [&] {
      std::vector<ImportedHadamard> bases;
      for (const auto& p : imports) bases.push_back(load_import(p));
      const auto rows = size_report(max_d, bases);
      io::write_text(out_path, report_tsv(rows));
      std::size_t certified = 0, failed = 0, needs = 0, conjectural = 0;
      for (const auto& row : rows) {
        if (row.status == "certified") ++certified;
        if (row.status == "failed") ++failed;
        if (row.status == "needs_import") ++needs;
        if (row.status == "conjectural") ++conjectural;
      }
      out << "rows=" << rows.size() << "\n"
          << "certified=" << certified << "\n"
          << "failed=" << failed << "\n"
          << "needs_import=" << needs << "\n"
          << "conjectural=" << conjectural << "\n";
      return failed == 0 ? 0 : 1;
    };
  });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n" << app.help();
    return 2;
  }
  if (!action) {
    err << app.help();
    return 2;
  }
  try {
    return action();
  } catch (const UsageError& e) {
    err << "usage: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return is_io_code(e.code()) ? 2 : 1;
  }
}

}  // namespace etf::cli
