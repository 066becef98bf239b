#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "etf_forge/catalog.hpp"
#include "etf_forge/error.hpp"
#include "etf_forge/hadamard.hpp"
#include "etf_forge/io.hpp"
#include "etf_forge/search.hpp"
#include "etf_forge/signature.hpp"
#include "etf_forge/synthesis.hpp"

namespace py = pybind11;
using namespace etf;

namespace {

using ComplexArray = py::array_t<Complex, py::array::c_style | py::array::forcecast>;

ComplexMatrix to_matrix(const ComplexArray& arr) {
  if (arr.ndim() != 2) throw Error("dim", "expected a 2-D array");
  const auto rows = static_cast<std::size_t>(arr.shape(0));
  const auto cols = static_cast<std::size_t>(arr.shape(1));
  std::vector<Complex> entries(arr.data(), arr.data() + rows * cols);
  return ComplexMatrix(rows, cols, std::move(entries));
}

ComplexArray to_array(const ComplexMatrix& m) {
  ComplexArray out({m.rows(), m.cols()});
  std::copy(m.entries().begin(), m.entries().end(), out.mutable_data());
  return out;
}

py::array_t<int> hadamard_array(const SkewHadamard& h) {
  py::array_t<int> out({h.order(), h.order()});
  auto view = out.mutable_unchecked<2>();
  for (std::size_t i = 0; i < h.order(); ++i) {
    for (std::size_t j = 0; j < h.order(); ++j) view(i, j) = h(i, j);
  }
  return out;
}

SkewHadamard hadamard_from_array(const py::array_t<int, py::array::c_style | py::array::forcecast>& arr) {
  if (arr.ndim() != 2 || arr.shape(0) != arr.shape(1)) throw Error("dim", "expected a square 2-D array");
  const auto m = static_cast<std::size_t>(arr.shape(0));
  std::vector<std::int8_t> entries(m * m);
  for (std::size_t k = 0; k < m * m; ++k) {
    const int v = arr.data()[k];
    if (v != 1 && v != -1) throw Error("not_skew_hadamard", "entries must be +1 or -1");
    entries[k] = static_cast<std::int8_t>(v);
  }
  return SkewHadamard(m, std::move(entries));
}

Epsilon epsilon_from_int(int e) {
  if (e == 1) return Epsilon::plus;
  if (e == -1) return Epsilon::minus;
  throw Error("usage", "epsilon must be +1 or -1");
}

py::dict certificate_dict(const Certificate& c) {
  py::dict out;
  out["d"] = c.d;
  out["n"] = c.n;
  out["mu_target"] = c.mu_target;
  out["coherence"] = c.coherence;
  out["equiangularity_dev"] = c.equiangularity_dev;
  out["tightness_residual"] = c.tightness_residual;
  out["tolerance"] = c.tolerance;
  out["pass"] = c.pass;
  out["provenance"] = c.provenance;
  return out;
}

Frame frame_from(const ComplexArray& arr) { return Frame::checked(to_matrix(arr), "python"); }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Equiangular tight frames from skew Hadamard matrices";

  static py::exception<Error> error_type(m, "EtfError");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object exc = py::handle(error_type.ptr())(e.what());
      exc.attr("code") = e.code();
      PyErr_SetObject(error_type.ptr(), exc.ptr());
    }
  });

  m.def("welch_mu", &welch_mu, py::arg("d"), py::arg("n"));
  m.def(
      "frame_params",
      [](std::size_t d, std::size_t n) {
        const FrameParams p = frame_params(d, n);
        py::dict out;
        out["d"] = p.d;
        out["n"] = p.n;
        out["mu"] = p.mu;
        out["nu"] = p.nu;
        out["c"] = p.c;
        out["lambda"] = p.lambda;
        return out;
      },
      py::arg("d"), py::arg("n"));
  m.def("doubling_feasible", &doubling_feasible, py::arg("d"), py::arg("n"));

  m.def(
      "paley_skew_hadamard", [](std::uint64_t q) { return hadamard_array(paley_skew_hadamard(q)); }, py::arg("q"));
  m.def(
      "double_hadamard", [](const py::array_t<int, py::array::c_style | py::array::forcecast>& h) {
        return hadamard_array(double_hadamard(hadamard_from_array(h)));
      },
      py::arg("h"));
  m.def(
      "core_adjacency",
      [](const py::array_t<int, py::array::c_style | py::array::forcecast>& h) {
        const CoreAdjacency a = core_adjacency(hadamard_from_array(h));
        py::array_t<int> out({a.n(), a.n()});
        auto view = out.mutable_unchecked<2>();
        for (std::size_t i = 0; i < a.n(); ++i) {
          for (std::size_t j = 0; j < a.n(); ++j) view(i, j) = a(i, j);
        }
        return out;
      },
      py::arg("h"));

  m.def(
      "verify_signature",
      [](const ComplexArray& s) {
        const SignatureInfo info = verify_signature(to_matrix(s));
        return py::make_tuple(info.d, info.n, info.c);
      },
      py::arg("s"));
  m.def(
      "strohmer_signature",
      [](const py::array_t<int, py::array::c_style | py::array::forcecast>& h) {
        const SkewHadamard had = hadamard_from_array(h);
        return to_array(strohmer_signature(core_adjacency(had), had.order()).matrix());
      },
      py::arg("h"));
  m.def(
      "conference_signature",
      [](const py::array_t<int, py::array::c_style | py::array::forcecast>& h) {
        return to_array(conference_signature(hadamard_from_array(h)).matrix());
      },
      py::arg("h"));
  m.def(
      "double_signature",
      [](const ComplexArray& s, int epsilon) {
        return to_array(double_signature(SignatureMatrix::certify(to_matrix(s)), epsilon_from_int(epsilon)).matrix());
      },
      py::arg("s"), py::arg("epsilon") = 1);

  m.def(
      "synthesize",
      [](const ComplexArray& s) {
        const SignatureMatrix sig = SignatureMatrix::certify(to_matrix(s));
        return to_array(factor_gram(gram_from_signature(sig), sig.d()).vectors);
      },
      py::arg("s"), "Frame whose Gram matrix is I + mu S");
  m.def(
      "verify_etf", [](const ComplexArray& f, double tol) { return certificate_dict(verify_etf(frame_from(f), tol)); },
      py::arg("f"), py::arg("tol") = kDefaultTolerance);
  m.def(
      "naimark_complement", [](const ComplexArray& f) { return to_array(naimark_complement(frame_from(f)).vectors); },
      py::arg("f"));
  m.def(
      "doubling_constants",
      [](std::size_t d, std::size_t n, int epsilon) {
        const DoublingConstants k = doubling_constants(d, n, epsilon_from_int(epsilon));
        return py::make_tuple(k.a, k.b, k.w, k.z);
      },
      py::arg("d"), py::arg("n"), py::arg("epsilon") = 1);
  m.def(
      "double_etf",
      [](const ComplexArray& f, const ComplexArray& g, int epsilon) {
        return to_array(double_etf(frame_from(f), frame_from(g), epsilon_from_int(epsilon)).vectors);
      },
      py::arg("f"), py::arg("g"), py::arg("epsilon") = 1);
  m.def(
      "build_skew_etf",
      [](const py::array_t<int, py::array::c_style | py::array::forcecast>& h) {
        return to_array(build_skew_etf(hadamard_from_array(h)).vectors);
      },
      py::arg("h"));
  m.def("mercedes_benz", [] { return to_array(mercedes_benz_frame().vectors); });

  m.def(
      "alternating_projections",
      [](std::size_t d, std::size_t n, std::size_t restarts, std::size_t iters, std::uint64_t seed) {
        SearchConfig cfg;
        cfg.d = d;
        cfg.n = n;
        cfg.restarts = restarts;
        cfg.max_iters = iters;
        cfg.seed = seed;
        SearchResult r;
        {
          py::gil_scoped_release release;
          r = alternating_projections(cfg);
        }
        py::dict out;
        out["frame"] = to_array(r.best_frame.vectors);
        out["best_coherence"] = r.best_coherence;
        out["restart_index"] = r.restart_index;
        out["iterations_used"] = r.iterations_used;
        out["converged"] = r.converged;
        out["certificate"] = certificate_dict(search_report(r));
        return out;
      },
      py::arg("d"), py::arg("n"), py::arg("restarts") = 20, py::arg("iters") = 5000, py::arg("seed") = 0);

  m.def(
      "plan_size",
      [](std::size_t d) -> py::object {
        const auto plan = plan_size(d);
        if (!plan) return py::none();
        py::dict out;
        out["d"] = plan->d;
        out["m"] = plan->m;
        out["j"] = plan->j;
        out["k"] = plan->k;
        out["source"] = plan->source;
        return out;
      },
      py::arg("d"));
  m.def(
      "build_size",
      [](std::size_t d) {
        const auto plan = plan_size(d);
        if (!plan) throw Error("unreachable", "no plan for d=" + std::to_string(d));
        const PlanOutcome outcome = execute_plan(*plan);
        return py::make_tuple(to_array(outcome.frame.vectors), certificate_dict(outcome.certificate));
      },
      py::arg("d"));
  m.def(
      "size_report_tsv", [](std::size_t max_d) { return report_tsv(size_report(max_d)); }, py::arg("max_d"));

  m.def(
      "read_matrix", [](const std::filesystem::path& p) { return to_array(io::read_matrix(p)); }, py::arg("path"));
  m.def(
      "write_matrix", [](const std::filesystem::path& p, const ComplexArray& a) { io::write_matrix(p, to_matrix(a)); },
      py::arg("path"), py::arg("matrix"));
}
