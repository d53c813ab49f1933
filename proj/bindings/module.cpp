#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstring>
#include <sstream>
#include <vector>

#include "gcvsa/codebook.hpp"
#include "gcvsa/core.hpp"
#include "gcvsa/experiments.hpp"
#include "gcvsa/resonator.hpp"
#include "gcvsa/rng.hpp"
#include "gcvsa/rotation.hpp"
#include "gcvsa/spatial.hpp"
#include "gcvsa/tensor.hpp"

namespace py = pybind11;
using namespace gcvsa;

namespace {

py::array_t<double> tensor_array(const GcTensor& v) {
    const GridConfig& c = v.config();
    py::array_t<double> out({c.n_s, c.n_theta, c.n, c.n, c.n});
    std::memcpy(out.mutable_data(), v.data().data(),
                v.size() * sizeof(double));
    return out;
}

py::array_t<double> phase_array(const PhaseTensor& p) {
    const GridConfig& c = p.config();
    py::array_t<double> out({c.n_s, c.n_theta, 3});
    std::memcpy(out.mutable_data(), p.values().data(),
                p.size() * sizeof(double));
    return out;
}

std::vector<double> flat_copy(const py::array_t<double>& a, std::size_t want,
                              const char* what) {
    auto buf = py::array_t<double, py::array::c_style | py::array::forcecast>(a);
    if (static_cast<std::size_t>(buf.size()) != want) {
        std::ostringstream ss;
        ss << what << ": expected " << want << " values, got " << buf.size();
        throw std::invalid_argument(ss.str());
    }
    return std::vector<double>(buf.data(), buf.data() + buf.size());
}

py::array_t<double> field_array(const Field2D& f) {
    py::array_t<double> out({f.ny, f.nx});
    std::memcpy(out.mutable_data(), f.values.data(),
                f.values.size() * sizeof(double));
    return out;
}

std::vector<const Codebook*> codebook_ptrs(const std::vector<Codebook*>& cbs) {
    return {cbs.begin(), cbs.end()};
}

}  // namespace

PYBIND11_MODULE(_gcvsa, m) {
    m.doc() = "Grid-cell vector symbolic architecture: phasor tensors over "
              "banks of 3D hexagonal modules, with binding, bundling, "
              "fractional powers, spatial encoding, rotation, codebook "
              "cleanup and resonator factorization.";

    py::class_<GridConfig>(m, "GridConfig")
        .def(py::init<>())
        .def(py::init([](int n, int n_theta, int n_s, double s_min,
                         double growth, std::uint64_t seed) {
                 GridConfig c{n, n_theta, n_s, s_min, growth, seed};
                 c.validate();
                 return c;
             }),
             py::arg("n") = 3, py::arg("n_theta") = 23, py::arg("n_s") = 5,
             py::arg("s_min") = 4.0, py::arg("growth") = 1.42,
             py::arg("seed") = 0)
        .def_readwrite("n", &GridConfig::n)
        .def_readwrite("n_theta", &GridConfig::n_theta)
        .def_readwrite("n_s", &GridConfig::n_s)
        .def_readwrite("s_min", &GridConfig::s_min)
        .def_readwrite("growth", &GridConfig::growth)
        .def_readwrite("seed", &GridConfig::seed)
        .def("modules", &GridConfig::modules)
        .def("tensor_size", &GridConfig::tensor_size)
        .def("validate", &GridConfig::validate)
        .def("__eq__",
             [](const GridConfig& a, const GridConfig& b) { return a == b; })
        .def("__repr__", [](const GridConfig& c) {
            std::ostringstream ss;
            ss << "GridConfig(n=" << c.n << ", n_theta=" << c.n_theta
               << ", n_s=" << c.n_s << ", s_min=" << c.s_min
               << ", growth=" << c.growth << ", seed=" << c.seed << ")";
            return ss.str();
        });

    py::class_<Rng>(m, "Rng")
        .def(py::init<std::uint64_t>(), py::arg("seed"))
        .def("uniform", py::overload_cast<>(&Rng::uniform))
        .def("uniform", py::overload_cast<double, double>(&Rng::uniform),
             py::arg("lo"), py::arg("hi"))
        .def("gaussian", &Rng::gaussian);

    py::class_<GcTensor>(m, "GcTensor")
        .def(py::init<const GridConfig&>(), py::arg("config"))
        .def(py::init([](const GridConfig& cfg, py::array_t<double> data) {
                 return GcTensor(cfg,
                                 flat_copy(data, cfg.tensor_size(), "tensor"));
             }),
             py::arg("config"), py::arg("data"))
        .def_property_readonly("config", &GcTensor::config)
        .def("__len__", &GcTensor::size)
        .def("numpy", &tensor_array,
             "Copy of the values, shape (n_s, n_theta, n, n, n).")
        .def("at",
             py::overload_cast<int, int, int, int, int>(&GcTensor::at,
                                                        py::const_),
             py::arg("scale"), py::arg("orient"), py::arg("i"), py::arg("j"),
             py::arg("k"));

    py::class_<PhaseTensor>(m, "PhaseTensor")
        .def(py::init<const GridConfig&>(), py::arg("config"))
        .def(py::init([](const GridConfig& cfg, py::array_t<double> values) {
                 return PhaseTensor(
                     cfg, flat_copy(values, cfg.modules() * 3, "phases"));
             }),
             py::arg("config"), py::arg("values"))
        .def_property_readonly("config", &PhaseTensor::config)
        .def("__len__", &PhaseTensor::size)
        .def("numpy", &phase_array,
             "Copy of the phases, shape (n_s, n_theta, 3).")
        .def("at",
             py::overload_cast<int, int, int>(&PhaseTensor::at, py::const_),
             py::arg("scale"), py::arg("orient"), py::arg("axis"))
        .def("wrapped", &PhaseTensor::wrapped);

    m.def("materialize", &materialize, py::arg("phases"));
    m.def("extract_phases", &extract_phases, py::arg("v"),
          py::arg("tol") = 0.01);
    m.def("is_pure", &is_pure, py::arg("v"), py::arg("tol") = 0.01);
    m.def("random_phases", &random_phases, py::arg("config"), py::arg("rng"));
    m.def("random_symbol", &random_symbol, py::arg("config"), py::arg("rng"));
    m.def("identity", &identity, py::arg("config"));
    m.def(
        "bundle",
        [](const std::vector<GcTensor>& vs,
           std::optional<std::vector<double>> weights) {
            if (weights)
                return bundle(std::span<const GcTensor>(vs),
                              std::span<const double>(*weights));
            return bundle(std::span<const GcTensor>(vs));
        },
        py::arg("tensors"), py::arg("weights") = py::none());
    m.def("bind", &bind, py::arg("u"), py::arg("v"));
    m.def("unbind", &unbind, py::arg("u"), py::arg("v"));
    m.def("fractional_power", &fractional_power, py::arg("base"),
          py::arg("exponent"));
    m.def("dot", &dot, py::arg("a"), py::arg("b"));
    m.def("norm", &norm, py::arg("v"));
    m.def("cosine_similarity", &cosine_similarity, py::arg("a"), py::arg("b"));
    m.def("normalize_to_pure", &normalize_to_pure, py::arg("v"));

    py::class_<Rect>(m, "Rect")
        .def(py::init<>())
        .def(py::init([](double xmin, double ymin, double xmax, double ymax) {
                 return Rect{xmin, ymin, xmax, ymax};
             }),
             py::arg("xmin"), py::arg("ymin"), py::arg("xmax"), py::arg("ymax"))
        .def_readwrite("xmin", &Rect::xmin)
        .def_readwrite("ymin", &Rect::ymin)
        .def_readwrite("xmax", &Rect::xmax)
        .def_readwrite("ymax", &Rect::ymax);

    py::class_<Field2D>(m, "Field2D")
        .def_readonly("nx", &Field2D::nx)
        .def_readonly("ny", &Field2D::ny)
        .def_readonly("x0", &Field2D::x0)
        .def_readonly("y0", &Field2D::y0)
        .def_readonly("step", &Field2D::step)
        .def("numpy", &field_array, "Copy of the samples, shape (ny, nx).");

    py::class_<ModuleGeometry>(m, "ModuleGeometry")
        .def(py::init<const GridConfig&>(), py::arg("config"))
        .def_property_readonly("config", &ModuleGeometry::config)
        .def("scales", &ModuleGeometry::scales)
        .def("offsets", &ModuleGeometry::offsets)
        .def("scale", &ModuleGeometry::scale, py::arg("s"))
        .def("orientation", &ModuleGeometry::orientation, py::arg("s"),
             py::arg("t"));

    m.def(
        "make_generators",
        [](const ModuleGeometry& geom) {
            GeneratorPair g = make_generators(geom);
            return py::make_tuple(std::move(g.gx), std::move(g.gy));
        },
        py::arg("geometry"),
        "Unit-step phase slopes along +x and +y, as a (gx, gy) pair.");
    m.def(
        "encode_phases",
        [](double x, double y, const ModuleGeometry& geom) {
            return encode_phases({x, y}, geom);
        },
        py::arg("x"), py::arg("y"), py::arg("geometry"));
    m.def(
        "encode_position",
        [](double x, double y, const ModuleGeometry& geom) {
            return encode_position({x, y}, geom);
        },
        py::arg("x"), py::arg("y"), py::arg("geometry"));
    m.def(
        "receptive_field",
        [](const ModuleGeometry& geom, int scale, int orient, int i, int j,
           int k, const Rect& extent, double step) {
            return receptive_field(geom, scale, orient, i, j, k, extent, step);
        },
        py::arg("geometry"), py::arg("scale"), py::arg("orient"), py::arg("i"),
        py::arg("j"), py::arg("k"), py::arg("extent"), py::arg("step"));
    m.def(
        "lattice_vectors",
        [](const ModuleGeometry& geom, int scale, int orient) {
            const auto [a, b] = lattice_vectors(geom, scale, orient);
            return py::make_tuple(py::make_tuple(a.x, a.y),
                                  py::make_tuple(b.x, b.y));
        },
        py::arg("geometry"), py::arg("scale"), py::arg("orient"));

    m.def("rotate", &rotate, py::arg("v"), py::arg("alpha"),
          "Counterclockwise plane rotation by alpha radians.");
    m.def("permute_orientation", &permute_orientation, py::arg("v"),
          py::arg("steps"));
    m.def("angle_profile", &angle_profile, py::arg("rotated"),
          py::arg("reference"));
    m.def("decode_angle", &decode_angle, py::arg("rotated"),
          py::arg("reference"));

    py::class_<Codebook>(m, "Codebook")
        .def(py::init<const GridConfig&>(), py::arg("config"))
        .def_property_readonly("config", &Codebook::config)
        .def("__len__", &Codebook::size)
        .def("keys", &Codebook::keys)
        .def("add", &Codebook::add, py::arg("key"), py::arg("v"))
        .def("index_of", &Codebook::index_of, py::arg("key"))
        .def("entry", &Codebook::entry, py::arg("index"))
        .def("similarities", &Codebook::similarities, py::arg("v"))
        .def("readout", &Codebook::readout, py::arg("v"))
        .def("cleanup", &Codebook::cleanup, py::arg("v"))
        .def("cleanup_index", &Codebook::cleanup_index, py::arg("v"))
        .def(
            "superpose",
            [](const Codebook& cb, const std::vector<double>& w) {
                return cb.superpose(std::span<const double>(w));
            },
            py::arg("weights"))
        .def("save", &Codebook::save, py::arg("path"))
        .def_static("load", &Codebook::load, py::arg("path"));

    py::class_<ResonatorState>(m, "ResonatorState")
        .def_readonly("iterations", &ResonatorState::iterations)
        .def_readonly("converged", &ResonatorState::converged)
        .def_readonly("keys", &ResonatorState::keys)
        .def_readonly("key_indices", &ResonatorState::key_indices)
        .def_readonly("similarities", &ResonatorState::similarities)
        .def_readonly("estimates", &ResonatorState::estimates)
        .def_readonly("trace", &ResonatorState::trace);

    m.def(
        "factorize",
        [](const GcTensor& composite, const std::vector<Codebook*>& codebooks,
           int max_iter, double tol,
           std::optional<std::vector<GcTensor>> initial) {
            FactorizeOptions opts;
            opts.max_iter = max_iter;
            opts.tol = tol;
            opts.initial = std::move(initial);
            return factorize(composite, codebook_ptrs(codebooks), opts);
        },
        py::arg("composite"), py::arg("codebooks"), py::arg("max_iter") = 100,
        py::arg("tol") = 1e-4, py::arg("initial") = py::none(),
        "Factor a composite built by binding one entry per codebook.");

    py::class_<PositionCodebook>(m, "PositionCodebook")
        .def(py::init<const Rect&, double, const ModuleGeometry&,
                      std::size_t>(),
             py::arg("extent"), py::arg("step"), py::arg("geometry"),
             py::arg("max_entries") = 1000000)
        .def_property_readonly("codebook", &PositionCodebook::codebook,
                               py::return_value_policy::reference_internal)
        .def_property_readonly("nx", &PositionCodebook::nx)
        .def_property_readonly("ny", &PositionCodebook::ny)
        .def_property_readonly("step", &PositionCodebook::step)
        .def(
            "point",
            [](const PositionCodebook& pc, std::size_t index) {
                const Point2D p = pc.point(index);
                return py::make_tuple(p.x, p.y);
            },
            py::arg("index"))
        .def(
            "decode",
            [](const PositionCodebook& pc, const GcTensor& v) {
                const Point2D p = pc.decode(v);
                return py::make_tuple(p.x, p.y);
            },
            py::arg("v"))
        .def("similarity_map", &PositionCodebook::similarity_map, py::arg("v"));

    py::class_<experiments::PathIntegrationResult>(m, "PathIntegrationResult")
        .def_readonly("mse", &experiments::PathIntegrationResult::mse)
        .def_property_readonly(
            "positions",
            [](const experiments::PathIntegrationResult& r) {
                py::list out;
                for (const Point2D& p : r.trajectory.positions)
                    out.append(py::make_tuple(p.x, p.y));
                return out;
            })
        .def_property_readonly(
            "decoded",
            [](const experiments::PathIntegrationResult& r) {
                py::list out;
                for (const Point2D& p : r.decoded)
                    out.append(py::make_tuple(p.x, p.y));
                return out;
            })
        .def_readonly("final_map",
                      &experiments::PathIntegrationResult::final_map);

    m.def(
        "run_path_integration",
        [](const GridConfig& cfg, const Rect& arena, int steps,
           std::uint64_t seed, double lattice_step) {
            return experiments::run_path_integration(cfg, arena, steps, seed,
                                                     {}, lattice_step);
        },
        py::arg("config"), py::arg("arena"), py::arg("steps"), py::arg("seed"),
        py::arg("lattice_step") = 1.0,
        "Velocity-driven state update over a random trajectory, decoded "
        "against a lattice codebook; returns the path, decodes and error.");
}
