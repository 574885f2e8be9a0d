#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <memory>
#include <optional>
#include <vector>

#include "graphcodes/extremal.hpp"
#include "graphcodes/graphcode.hpp"
#include "graphcodes/harness.hpp"
#include "graphcodes/json_io.hpp"
#include "graphcodes/plurality.hpp"

namespace py = pybind11;
using namespace graphcodes;

namespace {

// shared_ptr<const T> is awkward as a pybind holder; wrap it
struct Mother {
  std::shared_ptr<const MotherCode> ptr;
};

Word to_word(const std::vector<int>& v) {
  Word w;
  w.reserve(v.size());
  for (const int x : v) w.push_back(static_cast<Symbol>(x));
  return w;
}

std::vector<std::vector<int>> from_left(const LeftWord& w) {
  std::vector<std::vector<int>> out;
  out.reserve(w.n);
  for (std::uint32_t l = 0; l < w.n; ++l) {
    const auto t = w.tuple(l);
    out.emplace_back(t.begin(), t.end());
  }
  return out;
}

using PyReceived = std::vector<std::optional<std::vector<int>>>;

ReceivedWord to_received_word(const PyReceived& values, std::uint32_t degree) {
  ReceivedWord y;
  y.n = static_cast<std::uint32_t>(values.size());
  y.degree = degree;
  for (const auto& v : values) {
    if (!v) {
      y.erased.push_back(1);
      y.flat.insert(y.flat.end(), degree, Symbol{0});
      continue;
    }
    if (v->size() != degree) throw Error("tuple arity mismatch");
    y.erased.push_back(0);
    for (const int x : *v) y.flat.push_back(static_cast<Symbol>(x));
  }
  return y;
}

PyReceived from_received_word(const ReceivedWord& y) {
  PyReceived out;
  out.reserve(y.n);
  for (std::uint32_t l = 0; l < y.n; ++l) {
    if (y.erased[l]) {
      out.emplace_back(std::nullopt);
      continue;
    }
    const auto t = y.tuple(l);
    out.emplace_back(std::vector<int>(t.begin(), t.end()));
  }
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "graph-concatenated error-correcting codes";

  py::register_exception<Error>(m, "GraphCodesError");

  py::class_<BipartiteGraph>(m, "Graph")
      .def_property_readonly("n_left", &BipartiteGraph::n_left)
      .def_property_readonly("n_right", &BipartiteGraph::n_right)
      .def_property_readonly("degree", &BipartiteGraph::degree)
      .def("neighbors",
           [](const BipartiteGraph& g, std::uint32_t l) {
             const auto s = g.neighbors(l);
             return std::vector<std::uint32_t>(s.begin(), s.end());
           })
      .def("to_json", [](const BipartiteGraph& g) { return graph_to_json(g).dump(); })
      .def_static("from_json",
                  [](const std::string& s) { return graph_from_json(nlohmann::json::parse(s)); })
      .def_static("from_neighbors",
                  [](std::uint32_t n_left, std::uint32_t n_right, std::uint32_t degree,
                     std::vector<std::uint32_t> flat) {
                    return BipartiteGraph::from_neighbors(n_left, n_right, degree,
                                                          std::move(flat));
                  })
      .def_static("sample", &sample_left_regular, py::arg("n_left"), py::arg("n_right"),
                  py::arg("degree"), py::arg("seed"))
      .def("__eq__", [](const BipartiteGraph& a, const BipartiteGraph& b) { return a == b; });

  py::class_<Mother>(m, "Mother")
      .def_static("repetition",
                  [](std::uint32_t q, std::uint32_t length) {
                    return Mother{std::make_shared<LinearCode>(LinearCode::repetition(q, length))};
                  })
      .def_static("linear",
                  [](std::uint32_t q, const std::vector<std::vector<int>>& rows) {
                    std::vector<Word> gen;
                    for (const auto& r : rows) gen.push_back(to_word(r));
                    return Mother{std::make_shared<LinearCode>(Field(q), std::move(gen))};
                  })
      .def_static("expander",
                  [](const BipartiteGraph& g) {
                    return Mother{std::make_shared<ExpanderCode>(g)};
                  })
      .def_static("from_json",
                  [](const std::string& s) {
                    return Mother{mother_from_json(nlohmann::json::parse(s))};
                  })
      .def("to_json", [](const Mother& mo) { return mother_to_json(*mo.ptr).dump(); })
      .def_property_readonly("q", [](const Mother& mo) { return mo.ptr->alphabet_q(); })
      .def_property_readonly("length", [](const Mother& mo) { return mo.ptr->length(); })
      .def_property_readonly("size", [](const Mother& mo) { return mo.ptr->size(); })
      .def("distance", [](const Mother& mo) { return mo.ptr->distance(); })
      .def("encode_index",
           [](const Mother& mo, std::uint64_t i) {
             const Word w = mo.ptr->encode_index(i);
             return std::vector<int>(w.begin(), w.end());
           })
      .def("contains", [](const Mother& mo, const std::vector<int>& w) {
        return mo.ptr->contains(to_word(w));
      });

  py::class_<GraphCode>(m, "GraphCode")
      .def(py::init([](const BipartiteGraph& g, const Mother& mo) {
             return GraphCode(g, mo.ptr);
           }),
           py::arg("graph"), py::arg("mother"))
      .def_property_readonly("length", &GraphCode::length)
      .def_property_readonly("degree", &GraphCode::degree)
      .def_property_readonly("alphabet_q", &GraphCode::alphabet_q)
      .def_property_readonly("size", &GraphCode::size)
      .def("rate",
           [](const GraphCode& gc) -> py::object {
             const auto r = gc.rate();
             if (!r) return py::none();
             return py::make_tuple(r->numerator(), r->denominator());
           })
      .def("encode_index",
           [](const GraphCode& gc, std::uint64_t i) { return from_left(gc.encode_index(i)); })
      .def("encode",
           [](const GraphCode& gc, const std::vector<int>& mother_codeword) {
             return from_left(gc.encode(to_word(mother_codeword)));
           })
      .def(
          "decode_unique",
          [](const GraphCode& gc, const PyReceived& values, std::uint32_t k) -> py::object {
            UniqueDecodeOptions opts;
            opts.k = k;
            const auto res = unique_decode(gc, to_received_word(values, gc.degree()), opts);
            if (!res.codeword) return py::none();
            return py::cast(
                std::vector<int>(res.mother_codeword->begin(), res.mother_codeword->end()));
          },
          py::arg("values"), py::arg("k") = 1)
      .def(
          "decode_list",
          [](const GraphCode& gc, const PyReceived& values, std::uint32_t k, std::uint32_t ell,
             double rho) {
            ListDecodeOptions opts;
            opts.k = k;
            opts.ell = ell;
            opts.rho = rho;
            const auto res = list_decode(gc, to_received_word(values, gc.degree()), opts);
            std::vector<std::vector<int>> out;
            for (const auto& cand : res.accepted)
              out.emplace_back(cand.mother_codeword.begin(), cand.mother_codeword.end());
            return out;
          },
          py::arg("values"), py::arg("k") = 1, py::arg("ell") = 2, py::arg("rho") = 0.5);

  m.def(
      "corrupt",
      [](const GraphCode& gc, const std::vector<std::vector<int>>& values, std::uint32_t errors,
         std::uint32_t erasures, const std::string& strategy, std::uint64_t seed) {
        LeftWord w;
        w.n = gc.length();
        w.degree = gc.degree();
        for (const auto& t : values) {
          if (t.size() != w.degree) throw Error("tuple arity mismatch");
          for (const int x : t) w.flat.push_back(static_cast<Symbol>(x));
        }
        ChannelSpec spec;
        spec.errors = errors;
        spec.erasures = erasures;
        spec.strategy = strategy_from_name(strategy);
        spec.seed = seed;
        return from_received_word(corrupt(gc, w, spec));
      },
      py::arg("code"), py::arg("values"), py::arg("errors"), py::arg("erasures"),
      py::arg("strategy") = "uniform-random", py::arg("seed") = 0);

  m.def(
      "plan_disperser",
      [](std::uint32_t n_left, std::uint32_t k, double delta) {
        const auto p = plan_disperser_params(n_left, k, delta);
        return py::make_tuple(p.degree, p.n_right);
      },
      py::arg("n_left"), py::arg("k"), py::arg("delta"));
  m.def(
      "plan_multiset",
      [](std::uint32_t n_left, std::uint32_t k, double delta) {
        const auto p = plan_multiset_params(n_left, k, delta);
        return py::make_tuple(p.degree, p.n_right);
      },
      py::arg("n_left"), py::arg("k"), py::arg("delta"));
  m.def(
      "certify_disperser",
      [](const BipartiteGraph& g, std::uint32_t k, double delta, bool exhaustive,
         std::uint64_t trials, std::uint64_t seed) {
        DisperserSpec spec;
        spec.k = k;
        spec.delta = delta;
        const auto cert = exhaustive ? certify_disperser_exhaustive(g, spec)
                                     : refute_disperser_randomized(g, spec, trials, seed);
        return verdict_name(cert.verdict);
      },
      py::arg("graph"), py::arg("k"), py::arg("delta"), py::arg("exhaustive") = true,
      py::arg("trials") = 500, py::arg("seed") = 0);
}
