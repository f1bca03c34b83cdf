#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "lus/clips.hpp"
#include "lus/imgops.hpp"
#include "lus/masking.hpp"
#include "lus/metrics.hpp"
#include "lus/phantom.hpp"
#include "lus/pleura.hpp"
#include "lus/straighten.hpp"

namespace py = pybind11;

namespace {

lus::Frame frame_from_array(const py::array_t<double, py::array::c_style | py::array::forcecast>& a) {
    if (a.ndim() != 2)
        throw py::value_error("frame array must be 2-D (rows, cols)");
    const int h = static_cast<int>(a.shape(0));
    const int w = static_cast<int>(a.shape(1));
    std::vector<double> pixels(a.data(), a.data() + static_cast<std::size_t>(w) * h);
    return lus::frame_new(w, h, std::move(pixels));
}

py::array_t<double> array_from_frame(const lus::Frame& f) {
    py::array_t<double> a({f.height(), f.width()});
    std::copy(f.pixels().begin(), f.pixels().end(), a.mutable_data());
    return a;
}

py::array_t<bool> array_from_mask(const lus::BinaryMask& m) {
    py::array_t<bool> a({m.height, m.width});
    bool* out = a.mutable_data();
    for (std::size_t i = 0; i < m.bits.size(); ++i)
        out[i] = m.bits[i] != 0;
    return a;
}

lus::SegmentationParams seg_params(int work_size, double sobel_factor, double intensity_k,
                                   int dilate_iters, int poly_degree, double tangent_extension,
                                   int max_band_thickness) {
    lus::SegmentationParams p;
    p.work_size = work_size;
    p.sobel_factor = sobel_factor;
    p.intensity_k = intensity_k;
    p.dilate_iters = dilate_iters;
    p.poly_degree = poly_degree;
    p.tangent_extension = tangent_extension;
    p.max_band_thickness = max_band_thickness;
    return p;
}

py::dict seg_to_dict(const lus::PleuralSegmentation& seg) {
    py::dict d;
    d["width"] = seg.width;
    d["height"] = seg.height;
    d["lower_coeffs"] = seg.lower.poly.coefficients();
    d["lower_domain"] = py::make_tuple(seg.lower.poly.x_min(), seg.lower.poly.x_max());
    d["upper_coeffs"] = seg.upper.poly.coefficients();
    d["upper_domain"] = py::make_tuple(seg.upper.poly.x_min(), seg.upper.poly.x_max());
    d["lower_rows"] = seg.lower_rows();
    d["upper_rows"] = seg.upper_rows();
    d["band"] = array_from_mask(seg.band);
    return d;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Lung-ultrasound preprocessing: pleural-line segmentation, region masking, "
              "straightening, clip sampling, metrics, and synthetic phantoms";

    py::register_exception<lus::Error>(m, "LusError");

    m.def("gaussian_blur", [](const py::array_t<double>& a) {
        return array_from_frame(lus::gaussian_blur_5x5(frame_from_array(a)));
    }, py::arg("frame"), "5x5 Gaussian blur (sigma 1.0), replicate border");

    m.def("resize_bilinear", [](const py::array_t<double>& a, int width, int height) {
        return array_from_frame(lus::resize_bilinear(frame_from_array(a), width, height));
    }, py::arg("frame"), py::arg("width"), py::arg("height"));

    m.def("sobel_y", [](const py::array_t<double>& a) {
        return array_from_frame(lus::sobel_y(frame_from_array(a)));
    }, py::arg("frame"), "absolute 3x3 vertical-gradient Sobel response");

    m.def("segment_pleura",
          [](const py::array_t<double>& a, int work_size, double sobel_factor, double intensity_k,
             int dilate_iters, int poly_degree, double tangent_extension, int max_band_thickness) {
              const auto params = seg_params(work_size, sobel_factor, intensity_k, dilate_iters,
                                             poly_degree, tangent_extension, max_band_thickness);
              return seg_to_dict(lus::segment_pleura(frame_from_array(a), params));
          },
          py::arg("frame"), py::arg("work_size") = 150, py::arg("sobel_factor") = 0.2,
          py::arg("intensity_k") = 1.3, py::arg("dilate_iters") = 2, py::arg("poly_degree") = 4,
          py::arg("tangent_extension") = 12.0, py::arg("max_band_thickness") = 12,
          "Segment the pleural line; returns curves, per-column rows, and the band mask");

    m.def("make_variants",
          [](const py::array_t<double>& a, int work_size, double sobel_factor, double intensity_k,
             int dilate_iters, int poly_degree, double tangent_extension, int max_band_thickness,
             int crop_margin, int target_row, int context_margin) {
              const lus::Frame frame = frame_from_array(a);
              const auto params = seg_params(work_size, sobel_factor, intensity_k, dilate_iters,
                                             poly_degree, tangent_extension, max_band_thickness);
              lus::StraightenParams sp;
              sp.crop_margin = crop_margin;
              sp.target_row = target_row;
              lus::MaskParams mp;
              mp.context_margin = context_margin;
              const auto seg = lus::segment_pleura(frame, params);
              py::dict out;
              for (auto& [variant, img] : lus::make_all_variants(frame, seg, sp, mp))
                  out[py::str(lus::variant_name(variant))] = array_from_frame(img);
              return out;
          },
          py::arg("frame"), py::arg("work_size") = 150, py::arg("sobel_factor") = 0.2,
          py::arg("intensity_k") = 1.3, py::arg("dilate_iters") = 2, py::arg("poly_degree") = 4,
          py::arg("tangent_extension") = 12.0, py::arg("max_band_thickness") = 12,
          py::arg("crop_margin") = 5, py::arg("target_row") = 20, py::arg("context_margin") = 0,
          "All seven region-masked inputs for one frame, keyed by variant name");

    m.def("sample_frame_indices",
          [](int clip_len, int n_segments, std::uint64_t seed) {
              lus::SampleSpec spec;
              spec.n_segments = n_segments;
              spec.seed = seed;
              lus::Rng rng(seed);
              return lus::sample_frame_indices(clip_len, spec, rng);
          },
          py::arg("clip_len"), py::arg("n_segments") = 18, py::arg("seed") = 0,
          "Temporal sampling: one frame per equal segment with a shared random offset");

    m.def("accuracy", [](const std::vector<int>& preds, const std::vector<int>& truths) {
        return lus::accuracy(preds, truths);
    }, py::arg("preds"), py::arg("truths"));

    m.def("f1_macro", [](const std::vector<int>& preds, const std::vector<int>& truths) {
        return lus::f1_macro(preds, truths);
    }, py::arg("preds"), py::arg("truths"));

    m.def("roc_binary",
          [](const std::vector<double>& scores, const std::vector<bool>& positives) {
              const lus::RocCurve c = lus::roc_binary(scores, positives);
              py::dict d;
              d["points"] = c.points;
              d["auc"] = c.auc;
              return d;
          },
          py::arg("scores"), py::arg("positives"));

    m.def("auc_multiclass",
          [](const std::vector<int>& truths, const py::array_t<double>& scores) {
              if (scores.ndim() != 2 || scores.shape(1) != 4)
                  throw py::value_error("scores must be (n, 4)");
              if (static_cast<std::size_t>(scores.shape(0)) != truths.size())
                  throw py::value_error("one truth per score row required");
              lus::ScoredPredictions sp;
              auto view = scores.unchecked<2>();
              for (std::size_t i = 0; i < truths.size(); ++i) {
                  lus::ScoredRow row;
                  row.truth = truths[i];
                  for (int c = 0; c < 4; ++c)
                      row.scores[static_cast<std::size_t>(c)] = view(static_cast<py::ssize_t>(i), c);
                  sp.rows.push_back(row);
              }
              const lus::MulticlassAuc a = lus::auc_multiclass(sp);
              py::dict d;
              d["weighted"] = a.weighted;
              d["macro"] = a.macro;
              d["per_class"] = a.per_class;
              d["degenerate"] = a.degenerate;
              return d;
          },
          py::arg("truths"), py::arg("scores"));

    m.def("generate_phantom",
          [](int width, int height, const std::array<double, 4>& pleura_curve, int band_thickness,
             int n_blines, bool a_lines, bool consolidation, double speckle_sigma, int subq_layers,
             int n_frames, std::uint64_t seed) {
              lus::PhantomSpec spec;
              spec.width = width;
              spec.height = height;
              spec.pleura_curve = pleura_curve;
              spec.band_thickness = band_thickness;
              spec.n_blines = n_blines;
              spec.a_lines = a_lines;
              spec.consolidation = consolidation;
              spec.speckle_sigma = speckle_sigma;
              spec.subq_layers = subq_layers;
              spec.n_frames = n_frames;
              lus::Rng rng(seed);
              const auto [clip, truth] = lus::generate_phantom(spec, rng);
              py::list frames;
              for (const lus::Frame& f : clip.frames)
                  frames.append(array_from_frame(f));
              py::dict t;
              t["lower_rows"] = truth.lower_rows;
              t["upper_rows"] = truth.upper_rows;
              t["score"] = truth.score.value();
              return py::make_tuple(frames, t);
          },
          py::arg("width") = 150, py::arg("height") = 150,
          py::arg("pleura_curve") = std::array<double, 4>{75.0, 0.0, 0.0, 0.0},
          py::arg("band_thickness") = 5, py::arg("n_blines") = 0, py::arg("a_lines") = true,
          py::arg("consolidation") = false, py::arg("speckle_sigma") = 0.0,
          py::arg("subq_layers") = 2, py::arg("n_frames") = 8, py::arg("seed") = 0,
          "Synthetic B-mode clip with exact boundary/severity ground truth");

    m.def("severity_of",
          [](int n_blines, bool a_lines, bool consolidation) {
              lus::PhantomSpec spec;
              spec.n_blines = n_blines;
              spec.a_lines = a_lines;
              spec.consolidation = consolidation;
              return lus::severity_of(spec).value();
          },
          py::arg("n_blines"), py::arg("a_lines") = true, py::arg("consolidation") = false);

#ifdef LUS_VERSION
    m.attr("__version__") = LUS_VERSION;
#else
    m.attr("__version__") = "dev";
#endif
}
