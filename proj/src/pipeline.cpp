#include "lus/pipeline.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <set>
#include <sstream>

#include "lus/parallel.hpp"

namespace lus {

namespace fs = std::filesystem;

int exit_code_for(Errc code) {
    switch (code) {
    case Errc::IoError:
    case Errc::ParseError:
        return 2;
    case Errc::NoCandidates:
        return 3;
    case Errc::InvalidArgument:
    case Errc::InconsistentSpec:
        return 4;
    case Errc::MismatchedInputs:
        return 5;
    case Errc::PatientOverlap:
        return 6;
    default:
        return 1;
    }
}

namespace {

PipelineConfig load_config(const std::optional<fs::path>& path) {
    if (!path)
        return PipelineConfig{};
    try {
        return PipelineConfig::from_file(*path);
    } catch (const Error& e) {
        if (e.code() == Errc::IoError)
            throw;
        raise(Errc::InvalidArgument, std::string("bad config: ") + e.what());
    }
}

Frame overlay_curves(const Frame& frame, const PleuralSegmentation& seg) {
    Frame out = frame;
    const std::vector<int> lo = seg.lower_rows();
    const std::vector<int> up = seg.upper_rows();
    for (int x = 0; x < frame.width(); ++x) {
        const int l = lo[static_cast<std::size_t>(x)];
        const int u = up[static_cast<std::size_t>(x)];
        if (l >= 0 && l < frame.height())
            out.at(x, l) = 255.0;
        if (u >= 0 && u < frame.height())
            out.at(x, u) = 200.0;
    }
    return out;
}

PleuralSegmentation segmentation_for(const fs::path& curves_dir, const fs::path& input,
                                     const Frame& frame) {
    const fs::path record = curves_dir / (input.stem().string() + ".curves.txt");
    if (!fs::exists(record))
        raise(Errc::MismatchedInputs, "no curve record for " + input.string() + " (expected " +
                                          record.string() + ")");
    PleuralSegmentation seg = read_segmentation(record);
    if (seg.width != frame.width() || seg.height != frame.height())
        raise(Errc::MismatchedInputs, "curve record " + record.string() +
                                          " was computed for different frame dimensions");
    return seg;
}

std::vector<Variant> selected_variants(const std::string& name) {
    if (name == "all")
        return {kAllVariants, kAllVariants + 7};
    return {variant_from_name(name)};
}

std::string clip_stem(const std::string& clip_id) {
    return fs::path(clip_id).filename().string();
}

} // namespace

void run_segment(const SegmentOptions& opts) {
    const PipelineConfig cfg = load_config(opts.config);
    if (opts.inputs.empty())
        raise(Errc::InvalidArgument, "segment needs at least one input frame");
    parallel_for(opts.inputs.size(), [&](std::size_t i) {
        const fs::path& input = opts.inputs[i];
        const Frame frame = read_pgm(input);
        const PleuralSegmentation seg = segment_pleura(frame, cfg.seg);
        const std::string stem = input.stem().string();
        atomic_write_text(opts.out_dir / (stem + ".curves.txt"), format_segmentation(seg, cfg.seg));
        write_pgm(opts.out_dir / (stem + ".band.pgm"), seg.band);
        if (opts.overlay)
            write_pgm(opts.out_dir / (stem + ".overlay.pgm"), overlay_curves(frame, seg));
    });
}

void run_mask(const MaskOptions& opts) {
    const PipelineConfig cfg = load_config(opts.config);
    if (opts.inputs.empty())
        raise(Errc::InvalidArgument, "mask needs at least one input frame");
    const std::vector<Variant> variants = selected_variants(opts.variant);
    parallel_for(opts.inputs.size(), [&](std::size_t i) {
        const fs::path& input = opts.inputs[i];
        const Frame frame = read_pgm(input);
        const PleuralSegmentation seg = segmentation_for(opts.curves_dir, input, frame);
        const RegionMask mask = region_partition(frame.width(), frame.height(), seg);
        const std::string stem = input.stem().string();
        for (Variant v : variants) {
            const Frame out = v == Variant::StraightenedPleuralMerlin
                                  ? straightened_pleural_merlin(frame, seg, cfg.str, cfg.mask)
                                  : apply_variant(frame, mask, v, cfg.mask);
            write_pgm(opts.out_dir / (stem + "." + variant_name(v) + ".pgm"), out);
        }
    });
}

void run_straighten(const StraightenOptions& opts) {
    const PipelineConfig cfg = load_config(opts.config);
    if (opts.inputs.empty())
        raise(Errc::InvalidArgument, "straighten needs at least one input frame");
    parallel_for(opts.inputs.size(), [&](std::size_t i) {
        const fs::path& input = opts.inputs[i];
        const Frame frame = read_pgm(input);
        const PleuralSegmentation seg = segmentation_for(opts.curves_dir, input, frame);
        const Frame cropped =
            crop_above(frame, seg.upper_rows(), cfg.str.crop_margin, cfg.str.fill_value);
        auto [shifted, rows] = straighten(cropped, seg.upper, cfg.str);
        const std::string stem = input.stem().string();
        write_pgm(opts.out_dir / (stem + ".straightened.pgm"), shifted);
        std::ostringstream rec;
        rec << "shifted_upper_rows";
        for (int r : rows)
            rec << " " << r;
        rec << "\n";
        atomic_write_text(opts.out_dir / (stem + ".shifted_rows.txt"), rec.str());
    });
}

void run_pipeline(const PipelineOptions& opts) {
    const PipelineConfig cfg = load_config(opts.config);
    const std::vector<Variant> variants = selected_variants(opts.variant);
    const DatasetIndex index = read_index(opts.index_file);
    if (index.entries.empty())
        raise(Errc::InvalidArgument, "dataset index is empty");

    std::set<std::string> train_patients, test_patients;
    for (const DatasetEntry& e : index.entries)
        (e.split == "train" ? train_patients : test_patients).insert(e.patient_id);
    std::vector<std::string> overlap;
    std::set_intersection(train_patients.begin(), train_patients.end(), test_patients.begin(),
                          test_patients.end(), std::back_inserter(overlap));
    if (!overlap.empty())
        raise(Errc::PatientOverlap, "patient(s) present in both splits: " + overlap.front());

    std::set<std::string> stems;
    for (const DatasetEntry& e : index.entries)
        if (!stems.insert(clip_stem(e.clip_id)).second)
            raise(Errc::InvalidArgument, "duplicate clip name in index: " + e.clip_id);

    const fs::path base = opts.index_file.parent_path();
    struct ClipResult {
        std::vector<int> indices;
        std::vector<std::string> outputs; // relative to out_dir
    };
    std::vector<ClipResult> results(index.entries.size());
    const Rng root(opts.seed);

    parallel_for(index.entries.size(), [&](std::size_t i) {
        const DatasetEntry& entry = index.entries[i];
        const std::string stem = clip_stem(entry.clip_id);
        Rng clip_rng = root.fork(entry.clip_id);
        const Clip clip = read_clip_dir(base / entry.clip_id);
        ClipResult& res = results[i];
        res.indices = sample_frame_indices(clip.length(), cfg.sample, clip_rng);
        for (std::size_t k = 0; k < res.indices.size(); ++k) {
            const Frame& raw = clip.frames[static_cast<std::size_t>(res.indices[k])];
            const Frame resized = preprocess_frame(raw, cfg.sample);
            const PleuralSegmentation seg = segment_pleura(resized, cfg.seg);
            const RegionMask mask = region_partition(resized.width(), resized.height(), seg);
            for (Variant v : variants) {
                const Frame out = v == Variant::StraightenedPleuralMerlin
                                      ? straightened_pleural_merlin(resized, seg, cfg.str, cfg.mask)
                                      : apply_variant(resized, mask, v, cfg.mask);
                char name[32];
                std::snprintf(name, sizeof(name), "frame_%02zu.pgm", k);
                const fs::path rel = fs::path(stem) / variant_name(v) / name;
                write_pgm(opts.out_dir / rel, out);
                res.outputs.push_back(rel.generic_string());
            }
        }
    });

    // Balanced training list over the train split.
    DatasetIndex train;
    for (const DatasetEntry& e : index.entries)
        if (e.split == "train")
            train.entries.push_back(e);
    if (train.entries.empty())
        raise(Errc::InvalidArgument, "dataset index has no train entries");
    Rng upsample_rng = root.fork("upsample");
    const std::vector<std::size_t> balanced = upsample_dataset(train, upsample_rng);

    std::ostringstream man;
    man << "lus-manifest v1\n";
    man << "seed " << opts.seed << "\n";
    man << "variant " << opts.variant << "\n";
    man << "n_segments " << cfg.sample.n_segments << "\n";
    man << "target_size " << cfg.sample.target_size << "\n";
    man << "clips " << index.entries.size() << "\n";
    for (std::size_t i = 0; i < index.entries.size(); ++i) {
        const DatasetEntry& e = index.entries[i];
        man << "clip " << clip_stem(e.clip_id) << " score " << e.score.value() << " patient "
            << e.patient_id << " split " << e.split << " sampled";
        for (int idx : results[i].indices)
            man << " " << idx;
        man << "\n";
    }
    for (const ClipResult& res : results)
        for (const std::string& out : res.outputs)
            man << "output " << out << "\n";
    man << "balanced_train " << balanced.size() << "\n";
    for (std::size_t idx : balanced)
        man << "train " << clip_stem(train.entries[idx].clip_id) << "\n";
    man << "split_report train_patients " << train_patients.size() << " test_patients "
        << test_patients.size() << " overlap 0\n";
    atomic_write_text(opts.out_dir / "manifest.txt", man.str());
}

void run_metrics(const MetricsOptions& opts, std::ostream& out, std::ostream& diag) {
    const ScoresFile sf = read_scores_csv(opts.scores_file);
    if (sf.predictions.rows.empty())
        raise(Errc::ParseError, "scores file has no rows");

    std::vector<int> truths, preds;
    for (const ScoredRow& r : sf.predictions.rows) {
        truths.push_back(r.truth);
        // argmax; ties resolve to the lowest class index
        int best = 0;
        for (int c = 1; c < 4; ++c)
            if (r.scores[static_cast<std::size_t>(c)] > r.scores[static_cast<std::size_t>(best)])
                best = c;
        preds.push_back(best);
    }

    const double acc = accuracy(preds, truths);
    const double f1 = f1_macro(preds, truths);
    const MulticlassAuc auc = auc_multiclass(sf.predictions);
    for (const std::string& w : auc.warnings)
        diag << "warning: " << w << "\n";

    std::ostringstream report;
    report << "rows " << sf.predictions.rows.size() << "\n";
    report << "accuracy " << format_double(acc) << "\n";
    report << "f1_macro " << format_double(f1) << "\n";
    report << "auc_weighted " << format_double(auc.weighted) << "\n";
    report << "auc_macro " << format_double(auc.macro) << "\n";
    for (int c = 0; c < 4; ++c) {
        report << "auc_class" << c << " ";
        if (auc.degenerate[static_cast<std::size_t>(c)])
            report << "degenerate";
        else
            report << format_double(auc.per_class[static_cast<std::size_t>(c)]);
        report << "\n";
    }
    out << report.str();

    if (opts.out_dir) {
        std::ostringstream csv;
        csv << "metric,value\n";
        csv << "accuracy," << format_double(acc) << "\n";
        csv << "f1_macro," << format_double(f1) << "\n";
        csv << "auc_weighted," << format_double(auc.weighted) << "\n";
        csv << "auc_macro," << format_double(auc.macro) << "\n";
        for (int c = 0; c < 4; ++c)
            if (!auc.degenerate[static_cast<std::size_t>(c)])
                csv << "auc_class" << c << "," << format_double(auc.per_class[static_cast<std::size_t>(c)])
                    << "\n";
        atomic_write_text(*opts.out_dir / "report.csv", csv.str());

        for (int c = 0; c < 4; ++c) {
            if (auc.degenerate[static_cast<std::size_t>(c)])
                continue;
            std::vector<double> scores;
            std::vector<bool> positives;
            for (const ScoredRow& r : sf.predictions.rows) {
                scores.push_back(r.scores[static_cast<std::size_t>(c)]);
                positives.push_back(r.truth == c);
            }
            const RocCurve curve = roc_binary(scores, positives);
            std::ostringstream roc;
            roc << "fpr,tpr\n";
            for (const auto& [fpr, tpr] : curve.points)
                roc << format_double(fpr) << "," << format_double(tpr) << "\n";
            atomic_write_text(*opts.out_dir / ("roc_class" + std::to_string(c) + ".csv"),
                              roc.str());
        }
    }
}

void run_phantom(const PhantomOptions& opts) {
    PhantomSpec spec;
    try {
        spec = read_phantom_spec(opts.spec_file);
        spec.validate();
    } catch (const Error& e) {
        if (e.code() == Errc::IoError || e.code() == Errc::InconsistentSpec)
            throw;
        raise(Errc::InvalidArgument, std::string("bad phantom spec: ") + e.what());
    }
    if (opts.count < 1)
        raise(Errc::InvalidArgument, "phantom count must be at least 1");

    const Rng root(opts.seed);
    DatasetIndex index;
    std::vector<std::string> names(static_cast<std::size_t>(opts.count));
    parallel_for(static_cast<std::size_t>(opts.count), [&](std::size_t i) {
        char name[32];
        std::snprintf(name, sizeof(name), "phantom_%03zu", i);
        Rng rng = root.fork(name);
        const auto [clip, truth] = generate_phantom(spec, rng);
        write_clip_dir(opts.out_dir / name, clip);
        atomic_write_text(opts.out_dir / (std::string(name) + ".truth.txt"), format_truth(truth));
        names[i] = name;
    });
    for (std::size_t i = 0; i < names.size(); ++i) {
        char patient[32];
        std::snprintf(patient, sizeof(patient), "p%03zu", i);
        index.entries.push_back(
            {names[i], severity_of(spec), patient, "train"});
    }
    atomic_write_text(opts.out_dir / "index.txt", format_index(index));
}

} // namespace lus
