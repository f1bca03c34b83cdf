// lus: lung-ultrasound preprocessing toolkit.
//
// Exit codes: 0 ok, 1 internal error, 2 I/O or data parse failure,
// 3 no pleural-line candidates, 4 bad configuration or phantom spec,
// 5 frame/curve mismatch, 6 patient overlap between splits.

#include <functional>
#include <iostream>

#include <CLI11.hpp>

#include "lus/pipeline.hpp"

namespace {

int guarded(const char* command, const std::function<void()>& body) {
    try {
        body();
        return 0;
    } catch (const lus::Error& e) {
        std::cerr << "lus " << command << ": " << e.what() << "\n";
        return lus::exit_code_for(e.code());
    } catch (const std::exception& e) {
        std::cerr << "lus " << command << ": " << e.what() << "\n";
        return 1;
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Lung-ultrasound preprocessing: pleural-line segmentation, region masking, "
                 "straightening, clip pipelines, metrics, and synthetic phantoms"};
    app.require_subcommand(1);

    lus::SegmentOptions seg_opts;
    CLI::App* seg = app.add_subcommand("segment", "Segment the pleural line in B-mode frames");
    seg->add_option("inputs", seg_opts.inputs, "input PGM frames")->required();
    seg->add_option("--out", seg_opts.out_dir, "output directory")->required();
    seg->add_option("--config", seg_opts.config, "pipeline config file");
    seg->add_flag("--overlay", seg_opts.overlay, "also write frames with the fitted curves drawn");

    lus::MaskOptions mask_opts;
    CLI::App* mask = app.add_subcommand("mask", "Apply region-masked variants to frames");
    mask->add_option("inputs", mask_opts.inputs, "input PGM frames")->required();
    mask->add_option("--curves", mask_opts.curves_dir, "directory of matching curve records")
        ->required();
    mask->add_option("--variant", mask_opts.variant,
                     "variant name (original, subq, pleural, merlin, subq+pleural, "
                     "pleural+merlin, straightened-pleural+merlin) or 'all'");
    mask->add_option("--out", mask_opts.out_dir, "output directory")->required();
    mask->add_option("--config", mask_opts.config, "pipeline config file");

    lus::StraightenOptions str_opts;
    CLI::App* str = app.add_subcommand("straighten", "Crop and straighten the pleural line");
    str->add_option("inputs", str_opts.inputs, "input PGM frames")->required();
    str->add_option("--curves", str_opts.curves_dir, "directory of matching curve records")
        ->required();
    str->add_option("--out", str_opts.out_dir, "output directory")->required();
    str->add_option("--config", str_opts.config, "pipeline config file");

    lus::PipelineOptions pipe_opts;
    CLI::App* pipe = app.add_subcommand(
        "pipeline", "Sample, resize, segment, and mask every clip in a dataset index");
    pipe->add_option("--index", pipe_opts.index_file, "dataset index file")->required();
    pipe->add_option("--out", pipe_opts.out_dir, "output directory")->required();
    pipe->add_option("--seed", pipe_opts.seed, "random seed")->required();
    pipe->add_option("--variant", pipe_opts.variant, "variant name or 'all'");
    pipe->add_option("--config", pipe_opts.config, "pipeline config file");

    lus::MetricsOptions met_opts;
    CLI::App* met = app.add_subcommand("metrics", "Classification metrics from a scores CSV");
    met->add_option("--scores", met_opts.scores_file, "scores CSV file")->required();
    met->add_option("--out", met_opts.out_dir, "directory for CSV report and ROC point lists");

    lus::PhantomOptions ph_opts;
    CLI::App* ph = app.add_subcommand("phantom", "Generate synthetic phantoms with ground truth");
    ph->add_option("--spec", ph_opts.spec_file, "phantom spec file")->required();
    ph->add_option("--count", ph_opts.count, "number of phantoms");
    ph->add_option("--seed", ph_opts.seed, "random seed")->required();
    ph->add_option("--out", ph_opts.out_dir, "output directory")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_name() == "CallForHelp" || e.get_name() == "CallForAllHelp")
            return app.exit(e);
        app.exit(e);
        return 4;
    }

    if (seg->parsed())
        return guarded("segment", [&] { lus::run_segment(seg_opts); });
    if (mask->parsed())
        return guarded("mask", [&] { lus::run_mask(mask_opts); });
    if (str->parsed())
        return guarded("straighten", [&] { lus::run_straighten(str_opts); });
    if (pipe->parsed())
        return guarded("pipeline", [&] { lus::run_pipeline(pipe_opts); });
    if (met->parsed())
        return guarded("metrics", [&] { lus::run_metrics(met_opts, std::cout, std::cerr); });
    if (ph->parsed())
        return guarded("phantom", [&] { lus::run_phantom(ph_opts); });
    return 1;
}
