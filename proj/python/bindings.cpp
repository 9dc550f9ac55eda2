#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "credal/agenda.hpp"
#include "credal/divergence.hpp"
#include "credal/fixing.hpp"
#include "credal/io.hpp"
#include "credal/lab.hpp"
#include "credal/pooling.hpp"
#include "credal/wcap.hpp"

namespace py = pybind11;
using namespace credal;

namespace {

Credence to_credence(const std::vector<double>& values) {
  return Credence(values);
}

Profile make_profile(
    const Agenda& agenda,
    const std::vector<std::pair<std::string, std::vector<double>>>& agents,
    const std::vector<double>& weights) {
  std::vector<Agent> list;
  list.reserve(agents.size());
  for (const auto& [name, values] : agents) {
    list.push_back({name, Credence(values)});
  }
  return Profile(agenda, std::move(list), WeightVector::normalized(weights));
}

py::dict report_dict(const SolveReport& r) {
  py::dict d;
  d["argmin"] = r.argmin.values();
  d["objective"] = r.objective;
  d["iterations"] = r.iterations;
  d["residual"] = r.residual;
  return d;
}

py::dict claim_dict(const lab::ClaimResult& c) {
  py::dict d;
  d["id"] = c.id;
  d["description"] = c.description;
  d["negative"] = c.negative;
  d["tolerance"] = c.tolerance;
  d["gap"] = c.gap;
  d["cases"] = c.cases;
  d["skipped"] = c.skipped;
  d["pass"] = c.pass;
  d["detail"] = c.detail;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "coherence repair and aggregation of credence functions";

  py::register_exception<Error>(m, "CredalError");

  py::class_<Agenda>(m, "Agenda")
      .def_static("from_truth_table", &Agenda::from_truth_table,
                  py::arg("rows"), py::arg("names") = std::vector<std::string>{})
      .def_static("partition", &Agenda::partition, py::arg("m"))
      .def_property_readonly("proposition_count", &Agenda::proposition_count)
      .def_property_readonly("world_count", &Agenda::world_count)
      .def_property_readonly("is_partition", &Agenda::is_partition)
      .def_property_readonly("propositions", &Agenda::propositions)
      .def("world_column", &Agenda::world_column, py::arg("world"))
      .def("mix_worlds", &Agenda::mix_worlds, py::arg("q"));

  py::class_<Profile>(m, "Profile")
      .def(py::init(&make_profile), py::arg("agenda"), py::arg("agents"),
           py::arg("weights"))
      .def_property_readonly("agenda", &Profile::agenda)
      .def_property_readonly("agent_count", &Profile::agent_count)
      .def("credence",
           [](const Profile& p, std::size_t k) { return p.credence(k).values(); })
      .def("weight", &Profile::weight)
      .def_property_readonly("names", [](const Profile& p) {
        std::vector<std::string> names;
        for (const Agent& a : p.agents()) names.push_back(a.name);
        return names;
      });

  py::class_<BregmanGenerator>(m, "BregmanGenerator")
      .def_static("from_name", &BregmanGenerator::from_name, py::arg("name"))
      .def_static("sed", &BregmanGenerator::sed)
      .def_static("gkl", &BregmanGenerator::gkl)
      .def_static("power", &BregmanGenerator::power, py::arg("exponent"))
      .def_static("affine_shifted", &BregmanGenerator::affine_shifted,
                  py::arg("base"), py::arg("slope"), py::arg("offset"))
      .def_property_readonly("name", &BregmanGenerator::name)
      .def("phi", &BregmanGenerator::phi)
      .def("phi_prime", &BregmanGenerator::phi_prime)
      .def("phi_double_prime", &BregmanGenerator::phi_double_prime);

  m.def("omniscient",
        [](const Agenda& a, std::size_t t) { return omniscient(a, t).values(); },
        py::arg("agenda"), py::arg("world"));
  m.def("is_coherent",
        [](const Agenda& a, const std::vector<double>& c, double tol) {
          return is_coherent(a, to_credence(c), tol);
        },
        py::arg("agenda"), py::arg("credence"), py::arg("tol") = 1e-9);

  m.def("bregman",
        [](const BregmanGenerator& g, const std::vector<double>& c,
           const std::vector<double>& d) {
          return bregman(g, to_credence(c), to_credence(d));
        });
  m.def("sed", [](const std::vector<double>& c, const std::vector<double>& d) {
    return sed(to_credence(c), to_credence(d));
  });
  m.def("gkl", [](const std::vector<double>& c, const std::vector<double>& d) {
    return gkl(to_credence(c), to_credence(d));
  });
  m.def("phi_prime_inverse", &phi_prime_inverse, py::arg("generator"),
        py::arg("y"));

  m.def("fix_sed",
        [](const Agenda& a, const std::vector<double>& c) {
          return fix_sed(a, to_credence(c)).values();
        },
        py::arg("agenda"), py::arg("credence"));
  m.def("fix_gkl",
        [](const Agenda& a, const std::vector<double>& c) {
          return fix_gkl(a, to_credence(c)).values();
        },
        py::arg("agenda"), py::arg("credence"));
  m.def("fix_d1",
        [](const BregmanGenerator& g, const Agenda& a,
           const std::vector<double>& c, double tol) {
          return report_dict(fix_d1(g, a, to_credence(c), tol));
        },
        py::arg("generator"), py::arg("agenda"), py::arg("credence"),
        py::arg("tol") = 1e-9);
  m.def("fix_d2",
        [](const BregmanGenerator& g, const Agenda& a,
           const std::vector<double>& c, double tol) {
          return report_dict(fix_d2(g, a, to_credence(c), tol));
        },
        py::arg("generator"), py::arg("agenda"), py::arg("credence"),
        py::arg("tol") = 1e-9);
  m.def("project_coherent_general",
        [](const BregmanGenerator& g, const Agenda& a,
           const std::vector<double>& c, int direction, double tol) {
          return report_dict(project_coherent_general(g, a, to_credence(c),
                                                      direction, tol));
        },
        py::arg("generator"), py::arg("agenda"), py::arg("credence"),
        py::arg("direction"), py::arg("tol") = 1e-9);

  m.def("linear_pool",
        [](const Profile& p) { return linear_pool(p).values(); });
  m.def("geometric_pool",
        [](const Profile& p) { return geometric_pool(p).values(); });
  m.def("geometric_pool_unnormalized", [](const Profile& p) {
    return geometric_pool_unnormalized(p).values();
  });
  m.def("agg_d1", [](const BregmanGenerator& g, const Profile& p) {
    return agg_d1(g, p).values();
  });
  m.def("agg_d2", [](const BregmanGenerator& g, const Profile& p) {
    return agg_d2(g, p).values();
  });
  m.def("dictator_select",
        [](const BregmanGenerator& g, const Profile& p, bool constrained,
           int direction) {
          const DictatorReport r = dictator_select(g, p, constrained, direction);
          py::dict d;
          d["agent"] = r.agent ? py::cast(*r.agent) : py::none();
          d["credence"] = r.credence.values();
          d["objective"] = r.objective;
          d["dictatorship"] = r.dictatorship;
          return d;
        },
        py::arg("generator"), py::arg("profile"), py::arg("constrained"),
        py::arg("direction"));

  m.def("wcap_d1",
        [](const BregmanGenerator& g, const Profile& p, double tol) {
          return report_dict(wcap_d1(g, p, tol));
        },
        py::arg("generator"), py::arg("profile"), py::arg("tol") = 1e-9);
  m.def("wcap_d2",
        [](const BregmanGenerator& g, const Profile& p, double tol) {
          return report_dict(wcap_d2(g, p, tol));
        },
        py::arg("generator"), py::arg("profile"), py::arg("tol") = 1e-9);
  m.def("wcap_general",
        [](const BregmanGenerator& g, const Profile& p, int direction,
           double tol) {
          return report_dict(wcap_general(g, p, direction, tol));
        },
        py::arg("generator"), py::arg("profile"), py::arg("direction"),
        py::arg("tol") = 1e-9);

  m.def("random_profile", &lab::random_profile, py::arg("seed"), py::arg("m"),
        py::arg("n"), py::arg("coherent"));
  m.def("run_overlap_study", [] {
    const lab::OverlapStudy s = lab::run_overlap_study();
    py::dict d;
    d["LP1"] = s.lp_fine.values();
    d["LP2"] = s.lp_direct.values();
    d["LP3"] = s.lp_minimize.values();
    d["GP1"] = s.gp_fine.values();
    d["GP3"] = s.gp_minimize.values();
    d["GP2_error"] = s.gp_direct_error;
    return d;
  });
  m.def("certify",
        [](const std::vector<std::string>& claims, std::uint64_t seed) {
          lab::CertifyOptions options;
          options.claims = {claims.begin(), claims.end()};
          options.seed = seed;
          const lab::CertificationReport report = lab::certify(options);
          py::list out;
          for (const lab::ClaimResult& c : report.claims) out.append(claim_dict(c));
          return out;
        },
        py::arg("claims") = std::vector<std::string>{}, py::arg("seed") = 0);
  m.def("claim_ids", &lab::claim_ids);

  m.def("load_profile",
        [](const std::string& text) { return io::load_profile(text).profile; });
  m.def("emit_profile_json", &io::emit_profile_json);
}
