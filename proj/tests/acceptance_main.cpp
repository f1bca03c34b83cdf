// Acceptance suite: one self-contained check per release criterion, one
// [PASS]/[FAIL] line each. Exits with the number of failed criteria.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <set>
#include <string>
#include <vector>

#include "helpers.hpp"
#include "lus/io.hpp"
#include "lus/pipeline.hpp"
#include "oracles.hpp"
#include "phantom_set.hpp"

using namespace lus;
namespace fs = std::filesystem;

namespace {

struct Check {
    bool ok = true;
    std::string detail;

    void expect(bool cond, const std::string& what) {
        if (!cond && ok) {
            ok = false;
            detail = what;
        }
    }
};

// --- 1. threshold exactness ----------------------------------------------

void criterion_thresholds(Check& c) {
    const auto [ts1, ti1] = compute_thresholds(test::constant_frame(150, 150, 100.0), {});
    c.expect(std::abs(ts1 - 0.0) <= 1e-9, "sobel threshold of constant frame not 0");
    c.expect(std::abs(ti1 - 100.0) <= 1e-9, "intensity threshold of constant-100 frame not 100");

    Frame half = Frame::zeros(30, 30);
    for (int y = 15; y < 30; ++y)
        for (int x = 0; x < 30; ++x)
            half.at(x, y) = 200.0;
    const auto [ts2, ti2] = compute_thresholds(half, {});
    (void)ts2;
    c.expect(std::abs(ti2 - 230.0) <= 1e-9, "half-0/half-200 intensity threshold not 230");
}

// --- 2. segmentation accuracy vs phantom oracle ---------------------------

void criterion_segmentation(Check& c) {
    int good = 0;
    for (int i = 0; i < 100; ++i) {
        const PhantomSpec spec = test::acceptance_phantom(i);
        Rng rng(spec.seed);
        const auto [clip, truth] = generate_phantom(spec, rng);
        const PleuralSegmentation seg = segment_pleura(clip.frames[0], {});
        const double sy = static_cast<double>(spec.height) / 150.0;
        std::vector<double> errs;
        double ss = 0.0;
        for (int x = 0; x < spec.width; ++x) {
            const double e =
                std::abs(seg.lower.eval(x) - truth.lower_rows[static_cast<std::size_t>(x)]) / sy;
            errs.push_back(e);
            ss += e * e;
        }
        std::sort(errs.begin(), errs.end());
        const double median = errs[errs.size() / 2];
        const double rms = std::sqrt(ss / static_cast<double>(errs.size()));
        if (median <= 2.0 && rms <= 4.0)
            ++good;
    }
    c.expect(good >= 95, "only " + std::to_string(good) + "/100 phantoms within tolerance");
}

// --- 3. straightening flatness --------------------------------------------

void criterion_straightening(Check& c) {
    for (int i = 0; i < 100; ++i) {
        const PhantomSpec spec = test::acceptance_phantom(i);
        Rng rng(spec.seed);
        const auto [clip, truth] = generate_phantom(spec, rng);
        (void)truth;
        const Frame& frame = clip.frames[0];
        const PleuralSegmentation seg = segment_pleura(frame, {});
        StraightenParams sp;
        const Frame cropped = crop_above(frame, seg.upper_rows(), sp.crop_margin, sp.fill_value);
        const auto [flat, rows] = straighten(cropped, seg.upper, sp);
        (void)rows;
        const PleuralSegmentation after = segment_pleura(flat, {});
        int within = 0;
        for (int x = 0; x < spec.width; ++x)
            if (std::abs(after.upper.eval(x) - sp.target_row) <= 1.5)
                ++within;
        if (within < static_cast<int>(std::ceil(0.95 * spec.width))) {
            c.expect(false, "phantom " + std::to_string(i) + ": only " + std::to_string(within) +
                                "/" + std::to_string(spec.width) + " columns within 1.5 px");
            return;
        }
    }
}

// --- 4. partition invariants ----------------------------------------------

PleuralSegmentation random_segmentation(Rng& rng, int w, int h) {
    auto random_curve = [&rng, w, h](int degree) {
        std::vector<double> coeffs;
        coeffs.push_back(rng.uniform(-0.2 * h, 1.2 * h));
        for (int k = 1; k <= degree; ++k)
            coeffs.push_back(rng.uniform(-0.3 * h, 0.3 * h));
        return Curve(coeffs, 0.0, static_cast<double>(w - 1));
    };
    PleuralSegmentation seg;
    seg.width = w;
    seg.height = h;
    seg.upper = extend_tangent(random_curve(3), 12.0);
    seg.lower = extend_tangent(random_curve(4), 12.0);
    seg.band = band_between(w, h, seg.upper_rows(), seg.lower_rows());
    return seg;
}

void criterion_partition(Check& c) {
    Rng rng(2025);
    for (int rep = 0; rep < 1000; ++rep) {
        const int w = 8 + rng.uniform_int(48);
        const int h = 8 + rng.uniform_int(64);
        const PleuralSegmentation seg = random_segmentation(rng, w, h);
        const RegionMask rm = region_partition(w, h, seg);
        if (static_cast<int>(rm.labels.size()) != w * h) {
            c.expect(false, "partition does not cover the frame");
            return;
        }
        for (int x = 0; x < w; ++x) {
            int phase = 0;
            for (int y = 0; y < h; ++y) {
                const int r = static_cast<int>(rm.at(x, y));
                if (r < phase) {
                    c.expect(false, "column order violated");
                    return;
                }
                phase = r;
            }
        }
        const Frame frame = test::random_frame(rng, w, h, 1.0, 255.0);
        const Frame subq = apply_variant(frame, rm, Variant::Subq);
        const Frame pleural = apply_variant(frame, rm, Variant::Pleural);
        const Frame merlin = apply_variant(frame, rm, Variant::Merlin);
        for (std::size_t i = 0; i < frame.size(); ++i) {
            if (subq.pixels()[i] + pleural.pixels()[i] + merlin.pixels()[i] != frame.pixels()[i]) {
                c.expect(false, "region sum does not reproduce the frame exactly");
                return;
            }
        }
    }
}

// --- 5. variant contract ---------------------------------------------------

void criterion_variants(Check& c) {
    for (int i : {1, 13, 47}) {
        const PhantomSpec spec = test::acceptance_phantom(i);
        Rng rng(spec.seed);
        const auto [clip, truth] = generate_phantom(spec, rng);
        (void)truth;
        const Frame& frame = clip.frames[0];
        const PleuralSegmentation seg = segment_pleura(frame, {});
        const auto variants = make_all_variants(frame, seg, StraightenParams{});
        c.expect(variants.size() == 7, "expected exactly 7 variants");
        c.expect(variants.at(Variant::Original).pixels() == frame.pixels(),
                 "original variant is not the identity");
        const Frame& sp = variants.at(Variant::SubqPleural);
        const Frame& s = variants.at(Variant::Subq);
        const Frame& p = variants.at(Variant::Pleural);
        for (std::size_t k = 0; k < frame.size(); ++k) {
            if (sp.pixels()[k] != std::max(s.pixels()[k], p.pixels()[k])) {
                c.expect(false, "subq+pleural is not the pixelwise max of subq and pleural");
                return;
            }
        }
    }
}

// --- 6. least-squares oracle ------------------------------------------------

void criterion_least_squares(Check& c) {
    Rng rng(606);
    for (int rep = 0; rep < 100; ++rep) {
        const int degree = rep % 2 == 0 ? 4 : 3;
        std::vector<PointI> pts;
        const int n = degree + 1 + rng.uniform_int(80);
        for (int i = 0; i < n; ++i)
            pts.push_back({rng.uniform_int(150), rng.uniform_int(150)});
        std::set<int> xs;
        for (const auto& p : pts)
            xs.insert(p.x);
        if (static_cast<int>(xs.size()) < degree + 1 || xs.size() < 2) {
            --rep;
            continue;
        }
        const Curve fit = fit_polynomial(pts, degree);
        const double mine = oracle::fit_residual(pts, fit.coefficients(), fit.x_min(), fit.x_max());
        const auto ref = oracle::normal_equations_fit(pts, degree, fit.x_min(), fit.x_max());
        const double theirs = oracle::fit_residual(pts, ref, fit.x_min(), fit.x_max());
        if (mine > theirs + 1e-8) {
            c.expect(false, "fit residual exceeds the normal-equations oracle");
            return;
        }
    }
    // exact-fit cases
    for (int degree : {3, 4}) {
        std::vector<PointI> pts;
        for (int x = 0; x <= 120; x += 6)
            pts.push_back({x, 2 * x + 7});
        const Curve fit = fit_polynomial(pts, degree);
        c.expect(oracle::fit_residual(pts, fit.coefficients(), fit.x_min(), fit.x_max()) <= 1e-8,
                 "exact-fit residual above 1e-8");
    }
}

// --- 7. metrics oracle -------------------------------------------------------

void criterion_metrics(Check& c) {
    Rng rng(707);
    for (int rep = 0; rep < 50; ++rep) {
        const int n = 10 + rng.uniform_int(490);
        std::vector<double> scores;
        std::vector<bool> labels;
        bool pos = false, neg = false;
        for (int i = 0; i < n; ++i) {
            scores.push_back(rng.uniform_int(25) / 6.0); // ties guaranteed
            labels.push_back(rng.bernoulli(0.4));
            (labels.back() ? pos : neg) = true;
        }
        if (!pos || !neg) {
            --rep;
            continue;
        }
        const double auc = roc_binary(scores, labels).auc;
        if (std::abs(auc - oracle::pairwise_auc(scores, labels)) > 1e-9) {
            c.expect(false, "roc AUC deviates from the pairwise ranking statistic");
            return;
        }
    }

    ScoredPredictions sp;
    const std::array<int, 4> supports{27, 84, 75, 24};
    for (int cls = 0; cls < 4; ++cls)
        for (int i = 0; i < supports[static_cast<std::size_t>(cls)]; ++i) {
            ScoredRow row;
            row.truth = cls;
            for (int k = 0; k < 4; ++k)
                row.scores[static_cast<std::size_t>(k)] =
                    rng.uniform(0.0, 1.0) + (k == cls ? rng.uniform(0.0, 0.6) : 0.0);
            sp.rows.push_back(row);
        }
    const MulticlassAuc auc = auc_multiclass(sp);
    const double expected = (27.0 * auc.per_class[0] + 84.0 * auc.per_class[1] +
                             75.0 * auc.per_class[2] + 24.0 * auc.per_class[3]) /
                            210.0;
    c.expect(std::abs(auc.weighted - expected) <= 1e-12,
             "support-weighted AUC does not match the arithmetic identity");

    c.expect(std::abs(accuracy({0, 1, 2, 3}, {0, 1, 2, 2}) - 0.75) <= 1e-12,
             "accuracy hand value wrong");
    c.expect(std::abs(f1_score({0, 1, 0, 1}, {0, 0, 1, 1}, 2) - 0.5) <= 1e-12,
             "macro F1 hand value wrong");
}

// --- 8. sampling contract ----------------------------------------------------

void criterion_sampling(Check& c) {
    const SampleSpec spec;
    for (int t : {18, 36, 100, 1000}) {
        Rng rng(static_cast<std::uint64_t>(t));
        const auto idx = sample_frame_indices(t, spec, rng);
        c.expect(idx.size() == 18, "expected 18 indices");
        for (int i = 0; i < 18; ++i) {
            const int lo = static_cast<int>(static_cast<std::int64_t>(i) * t / 18);
            const int hi = static_cast<int>(static_cast<std::int64_t>(i + 1) * t / 18);
            c.expect(idx[static_cast<std::size_t>(i)] >= lo && idx[static_cast<std::size_t>(i)] < hi,
                     "index outside its segment for T=" + std::to_string(t));
            if (i > 0)
                c.expect(idx[static_cast<std::size_t>(i)] > idx[static_cast<std::size_t>(i - 1)],
                         "indices not strictly increasing");
        }
    }
    const auto odd = frame_indices_with_offset(36, 18, 1);
    for (int i = 0; i < 18; ++i)
        c.expect(odd[static_cast<std::size_t>(i)] == 2 * i + 1, "T=36, r=1 must yield the odd frames");
    Rng a(5), b(5);
    c.expect(sample_frame_indices(1000, spec, a) == sample_frame_indices(1000, spec, b),
             "sampling is not deterministic under a fixed seed");
}

// --- 9. upsampling balance ----------------------------------------------------

void criterion_upsampling(Check& c) {
    DatasetIndex index;
    const std::array<int, 4> counts{27, 84, 75, 24};
    int n = 0;
    for (int cls = 0; cls < 4; ++cls)
        for (int i = 0; i < counts[static_cast<std::size_t>(cls)]; ++i)
            index.entries.push_back(
                {"clip_" + std::to_string(n++), SeverityScore(cls), "p" + std::to_string(n), "train"});
    Rng rng(909);
    const auto picks = upsample_dataset(index, rng);
    c.expect(picks.size() == 336, "balanced total must be 336");
    std::array<int, 4> got{};
    std::vector<bool> present(index.entries.size(), false);
    for (std::size_t i : picks) {
        ++got[static_cast<std::size_t>(index.entries[i].score.value())];
        present[i] = true;
    }
    for (int cls = 0; cls < 4; ++cls)
        c.expect(got[static_cast<std::size_t>(cls)] == 84, "class count must equal 84");
    c.expect(std::all_of(present.begin(), present.end(), [](bool b) { return b; }),
             "an original entry is missing from the balanced list");
}

// --- 10. end-to-end determinism ------------------------------------------------

std::string spec_text_for_score(int score, int n_frames) {
    std::string s;
    s += "width 150\nheight 150\nband_thickness 5\nsubq_layers 2\n";
    s += "n_frames " + std::to_string(n_frames) + "\n";
    switch (score) {
    case 0:
        s += "pleura_curve 90 0.05 0 0\nn_blines 0\na_lines 1\nconsolidation 0\n";
        break;
    case 1:
        s += "pleura_curve 60 0.1 -0.0007 0\nn_blines 3\na_lines 0\nconsolidation 0\n";
        break;
    case 2:
        s += "pleura_curve 70 -0.2 0.0013 0\nn_blines 7\na_lines 0\nconsolidation 0\n";
        break;
    default:
        s += "pleura_curve 55 0 0 0\nn_blines 6\na_lines 0\nconsolidation 1\n";
        break;
    }
    s += "speckle_sigma 0.08\n";
    return s;
}

bool dirs_identical(const fs::path& a, const fs::path& b, std::string& why) {
    std::set<std::string> rel_a, rel_b;
    for (const auto& e : fs::recursive_directory_iterator(a))
        if (e.is_regular_file())
            rel_a.insert(fs::relative(e.path(), a).generic_string());
    for (const auto& e : fs::recursive_directory_iterator(b))
        if (e.is_regular_file())
            rel_b.insert(fs::relative(e.path(), b).generic_string());
    if (rel_a != rel_b) {
        why = "output file sets differ";
        return false;
    }
    for (const std::string& rel : rel_a) {
        if (test::read_file_bytes(a / rel) != test::read_file_bytes(b / rel)) {
            why = "byte mismatch in " + rel;
            return false;
        }
    }
    return true;
}

void criterion_pipeline_determinism(Check& c) {
    test::TempDir dir("acceptance_pipeline");
    std::string index_text;
    int patient = 0;
    for (int score = 0; score < 4; ++score) {
        test::write_file(dir.path() / ("spec" + std::to_string(score) + ".txt"),
                         spec_text_for_score(score, 20));
        const int rc = test::run_cli(
            "phantom --spec " + (dir.path() / ("spec" + std::to_string(score) + ".txt")).string() +
                " --count 2 --seed " + std::to_string(40 + score) + " --out " +
                (dir.path() / ("c" + std::to_string(score))).string(),
            dir.path());
        if (rc != 0) {
            c.expect(false, "phantom generation failed with exit " + std::to_string(rc));
            return;
        }
        for (int k = 0; k < 2; ++k) {
            const std::string split = (score == 3 && k == 1) ? "test" : "train";
            index_text += "c" + std::to_string(score) + "/phantom_00" + std::to_string(k) + " " +
                          std::to_string(score) + " p" + std::to_string(patient++) + " " + split +
                          "\n";
        }
    }
    test::write_file(dir.path() / "index.txt", index_text);

    for (const char* out : {"out1", "out2"}) {
        const int rc = test::run_cli("pipeline --index " + (dir.path() / "index.txt").string() +
                                         " --seed 12345 --variant all --out " +
                                         (dir.path() / out).string(),
                                     dir.path());
        if (rc != 0) {
            c.expect(false, "pipeline run failed with exit " + std::to_string(rc));
            return;
        }
    }
    std::string why;
    c.expect(dirs_identical(dir.path() / "out1", dir.path() / "out2", why), why);

    std::string overlap_text = index_text;
    overlap_text += "c0/phantom_000 0 p0 test\n"; // p0 already in train
    test::write_file(dir.path() / "overlap.txt", overlap_text);
    const int rc = test::run_cli("pipeline --index " + (dir.path() / "overlap.txt").string() +
                                     " --seed 12345 --out " + (dir.path() / "out3").string(),
                                 dir.path());
    c.expect(rc == 6, "patient overlap must exit with code 6, got " + std::to_string(rc));
}

// --- 11. severity mapping -------------------------------------------------------

void criterion_severity(Check& c) {
    PhantomSpec spec;
    spec.n_blines = 0;
    spec.a_lines = true;
    spec.consolidation = false;
    c.expect(severity_of(spec).value() == 0, "0 B-lines with A-lines must map to score 0");
    spec.n_blines = 5;
    c.expect(severity_of(spec).value() == 1, "5 B-lines must map to score 1");
    spec.n_blines = 6;
    c.expect(severity_of(spec).value() == 2, "6 B-lines must map to score 2");
    spec.consolidation = true;
    c.expect(severity_of(spec).value() == 3, "consolidation must map to score 3");
}

struct Criterion {
    int id;
    const char* name;
    double time_limit_s; // 0 = no stated limit
    std::function<void(Check&)> fn;
};

} // namespace

int main() {
    const std::vector<Criterion> criteria{
        {1, "threshold exactness (Sobel and intensity rules)", 1.0, criterion_thresholds},
        {2, "segmentation accuracy vs phantom oracle (100 seeded phantoms)", 60.0,
         criterion_segmentation},
        {3, "straightening flatness after refit (100 seeded phantoms)", 30.0,
         criterion_straightening},
        {4, "partition invariants over 1000 randomized segmentations", 10.0, criterion_partition},
        {5, "variant contract (7 variants, identity, union-max)", 0.0, criterion_variants},
        {6, "least-squares residual vs normal-equations oracle", 0.0, criterion_least_squares},
        {7, "metrics vs pairwise oracle and support-weighted identity", 0.0, criterion_metrics},
        {8, "temporal sampling contract", 0.0, criterion_sampling},
        {9, "upsampling balance (27/84/75/24 -> 4 x 84)", 0.0, criterion_upsampling},
        {10, "end-to-end pipeline determinism and patient-overlap guard", 0.0,
         criterion_pipeline_determinism},
        {11, "severity mapping boundary cases", 0.0, criterion_severity},
    };

    int failures = 0;
    for (const Criterion& criterion : criteria) {
        Check check;
        const auto start = std::chrono::steady_clock::now();
        try {
            criterion.fn(check);
        } catch (const std::exception& e) {
            check.expect(false, std::string("exception: ") + e.what());
        }
        const double elapsed =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (criterion.time_limit_s > 0.0 && elapsed > criterion.time_limit_s)
            check.expect(false, "exceeded the " + std::to_string(criterion.time_limit_s) +
                                    " s runtime limit");
        if (check.ok) {
            std::printf("[PASS] criterion %2d: %s (%.2fs)\n", criterion.id, criterion.name,
                        elapsed);
        } else {
            std::printf("[FAIL] criterion %2d: %s (%.2fs) -- %s\n", criterion.id, criterion.name,
                        elapsed, check.detail.c_str());
            ++failures;
        }
    }
    return failures;
}
