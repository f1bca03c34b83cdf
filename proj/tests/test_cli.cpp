#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <string>

#include "helpers.hpp"
#include "lus/io.hpp"

using namespace lus;
using test::run_cli;
using test::TempDir;

namespace fs = std::filesystem;

namespace {

const std::string kSpecText = "width 150\n"
                              "height 150\n"
                              "pleura_curve 66 0.1 -0.0007 0\n"
                              "band_thickness 5\n"
                              "n_blines 3\n"
                              "a_lines 0\n"
                              "consolidation 0\n"
                              "speckle_sigma 0.05\n"
                              "subq_layers 2\n"
                              "n_frames 6\n";

void make_phantoms(const TempDir& dir, int count, const std::string& extra = "") {
    test::write_file(dir.path() / "spec.txt", kSpecText + extra);
    const int rc = run_cli("phantom --spec " + (dir.path() / "spec.txt").string() +
                               " --count " + std::to_string(count) + " --seed 5 --out " +
                               (dir.path() / "ph").string(),
                           dir.path());
    REQUIRE(rc == 0);
}

} // namespace

TEST_CASE("segment writes curves and band, and fails cleanly") {
    TempDir dir("cli_segment");
    make_phantoms(dir, 1);
    const fs::path frame = dir.path() / "ph" / "phantom_000" / "frame_0000.pgm";
    REQUIRE(fs::exists(frame));

    CHECK(run_cli("segment " + frame.string() + " --out " + (dir.path() / "seg").string() +
                      " --overlay",
                  dir.path()) == 0);
    CHECK(fs::exists(dir.path() / "seg" / "frame_0000.curves.txt"));
    CHECK(fs::exists(dir.path() / "seg" / "frame_0000.band.pgm"));
    CHECK(fs::exists(dir.path() / "seg" / "frame_0000.overlay.pgm"));

    // fitted lower boundary tracks the phantom truth
    const PhantomTruth truth = read_truth(dir.path() / "ph" / "phantom_000.truth.txt");
    const PleuralSegmentation seg = read_segmentation(dir.path() / "seg" / "frame_0000.curves.txt");
    const auto rows = seg.lower_rows();
    int close = 0;
    for (int x = 0; x < 150; ++x)
        close += std::abs(rows[static_cast<std::size_t>(x)] -
                          truth.lower_rows[static_cast<std::size_t>(x)]) <= 2
                     ? 1
                     : 0;
    CHECK(close >= 135);

    // all-black frame -> exit 3 with a diagnostic
    write_pgm(dir.path() / "black.pgm", Frame::zeros(64, 64));
    std::string err;
    CHECK(run_cli("segment " + (dir.path() / "black.pgm").string() + " --out " +
                      (dir.path() / "seg2").string(),
                  dir.path(), nullptr, &err) == 3);
    CHECK(!err.empty());

    // unreadable input -> exit 2
    CHECK(run_cli("segment " + (dir.path() / "nope.pgm").string() + " --out " +
                      (dir.path() / "seg3").string(),
                  dir.path()) == 2);

    // bad config -> exit 4
    test::write_file(dir.path() / "bad.cfg", "warp 1\n");
    CHECK(run_cli("segment " + frame.string() + " --config " + (dir.path() / "bad.cfg").string() +
                      " --out " + (dir.path() / "seg4").string(),
                  dir.path()) == 4);
}

TEST_CASE("mask emits the requested variants") {
    TempDir dir("cli_mask");
    make_phantoms(dir, 1);
    const fs::path frame = dir.path() / "ph" / "phantom_000" / "frame_0000.pgm";
    REQUIRE(run_cli("segment " + frame.string() + " --out " + (dir.path() / "seg").string(),
                    dir.path()) == 0);

    // --variant original round-trips the frame bytes
    REQUIRE(run_cli("mask " + frame.string() + " --curves " + (dir.path() / "seg").string() +
                        " --variant original --out " + (dir.path() / "m1").string(),
                    dir.path()) == 0);
    CHECK(test::read_file_bytes(dir.path() / "m1" / "frame_0000.original.pgm") ==
          test::read_file_bytes(frame));

    // --variant all emits seven files
    REQUIRE(run_cli("mask " + frame.string() + " --curves " + (dir.path() / "seg").string() +
                        " --variant all --out " + (dir.path() / "m2").string(),
                    dir.path()) == 0);
    int files = 0;
    for (const auto& e : fs::directory_iterator(dir.path() / "m2"))
        files += e.is_regular_file() ? 1 : 0;
    CHECK(files == 7);

    // pleural+merlin zeroes the ground-truth SubQ region
    const PhantomTruth truth = read_truth(dir.path() / "ph" / "phantom_000.truth.txt");
    const Frame pm = read_pgm(dir.path() / "m2" / "frame_0000.pleural+merlin.pgm");
    const PleuralSegmentation seg = read_segmentation(dir.path() / "seg" / "frame_0000.curves.txt");
    const auto up = seg.upper_rows();
    for (int x = 0; x < 150; ++x)
        for (int y = 0; y < up[static_cast<std::size_t>(x)]; ++y)
            CHECK(pm.at(x, y) == 0.0);
    (void)truth;

    // missing curve record -> exit 5
    write_pgm(dir.path() / "other.pgm", Frame::zeros(32, 32));
    CHECK(run_cli("mask " + (dir.path() / "other.pgm").string() + " --curves " +
                      (dir.path() / "seg").string() + " --variant original --out " +
                      (dir.path() / "m3").string(),
                  dir.path()) == 5);

    // dimension mismatch -> exit 5
    write_pgm(dir.path() / "frame_0000.pgm", Frame::zeros(32, 32));
    CHECK(run_cli("mask " + (dir.path() / "frame_0000.pgm").string() + " --curves " +
                      (dir.path() / "seg").string() + " --variant original --out " +
                      (dir.path() / "m4").string(),
                  dir.path()) == 5);

    // unknown variant -> exit 4
    CHECK(run_cli("mask " + frame.string() + " --curves " + (dir.path() / "seg").string() +
                      " --variant bogus --out " + (dir.path() / "m5").string(),
                  dir.path()) == 4);
}

TEST_CASE("straighten writes the shifted frame and boundary rows") {
    TempDir dir("cli_straighten");
    make_phantoms(dir, 1);
    const fs::path frame = dir.path() / "ph" / "phantom_000" / "frame_0000.pgm";
    REQUIRE(run_cli("segment " + frame.string() + " --out " + (dir.path() / "seg").string(),
                    dir.path()) == 0);
    REQUIRE(run_cli("straighten " + frame.string() + " --curves " + (dir.path() / "seg").string() +
                        " --out " + (dir.path() / "st").string(),
                    dir.path()) == 0);
    CHECK(fs::exists(dir.path() / "st" / "frame_0000.straightened.pgm"));
    CHECK(fs::exists(dir.path() / "st" / "frame_0000.shifted_rows.txt"));
    const Frame out = read_pgm(dir.path() / "st" / "frame_0000.straightened.pgm");
    CHECK(out.width() == 150);
    CHECK(out.height() == 150);
}

TEST_CASE("metrics reports hand-checkable values") {
    TempDir dir("cli_metrics");
    test::write_file(dir.path() / "perfect.csv",
                     "clip_id,true,score0,score1,score2,score3\n"
                     "a,0,1,0,0,0\n"
                     "b,1,0,1,0,0\n"
                     "c,2,0,0,1,0\n"
                     "d,3,0,0,0,1\n");
    std::string out;
    REQUIRE(run_cli("metrics --scores " + (dir.path() / "perfect.csv").string() + " --out " +
                        (dir.path() / "rep").string(),
                    dir.path(), &out) == 0);
    CHECK(out.find("accuracy 1\n") != std::string::npos);
    CHECK(out.find("f1_macro 1\n") != std::string::npos);
    CHECK(out.find("auc_macro 1\n") != std::string::npos);
    CHECK(fs::exists(dir.path() / "rep" / "report.csv"));
    CHECK(fs::exists(dir.path() / "rep" / "roc_class0.csv"));

    test::write_file(dir.path() / "bad.csv", "who,knows\n1,2\n");
    CHECK(run_cli("metrics --scores " + (dir.path() / "bad.csv").string(), dir.path()) == 2);
}

TEST_CASE("phantom generation is deterministic and validates declared scores") {
    TempDir dir("cli_phantom");
    make_phantoms(dir, 2);
    const PhantomTruth truth = read_truth(dir.path() / "ph" / "phantom_000.truth.txt");
    CHECK(truth.score.value() == 1); // three B-lines

    // same seed twice -> identical bytes
    REQUIRE(run_cli("phantom --spec " + (dir.path() / "spec.txt").string() +
                        " --count 2 --seed 5 --out " + (dir.path() / "ph2").string(),
                    dir.path()) == 0);
    for (const char* rel : {"phantom_000/frame_0000.pgm", "phantom_001/frame_0005.pgm",
                            "phantom_001.truth.txt", "index.txt"})
        CHECK(test::read_file_bytes(dir.path() / "ph" / rel) ==
              test::read_file_bytes(dir.path() / "ph2" / rel));

    // inconsistent declared score -> exit 4
    test::write_file(dir.path() / "bad_spec.txt", kSpecText + "score 0\n");
    CHECK(run_cli("phantom --spec " + (dir.path() / "bad_spec.txt").string() +
                      " --count 1 --seed 5 --out " + (dir.path() / "ph3").string(),
                  dir.path()) == 4);
}

TEST_CASE("pipeline runs clips end to end") {
    TempDir dir("cli_pipeline");
    // two tiny clips with distinct scores will not balance; use four classes
    test::write_file(dir.path() / "spec.txt", kSpecText);
    REQUIRE(run_cli("phantom --spec " + (dir.path() / "spec.txt").string() +
                        " --count 4 --seed 11 --out " + (dir.path() / "clips").string(),
                    dir.path()) == 0);
    // hand-written index: reuse the same clip dirs under all four scores
    test::write_file(dir.path() / "index.txt",
                     "clips/phantom_000 0 pa train\n"
                     "clips/phantom_001 1 pb train\n"
                     "clips/phantom_002 2 pc train\n"
                     "clips/phantom_003 3 pd train\n");
    test::write_file(dir.path() / "fast.cfg", "n_segments 4\ntarget_size 96\n");
    REQUIRE(run_cli("pipeline --index " + (dir.path() / "index.txt").string() + " --seed 3 " +
                        "--variant pleural+merlin --config " + (dir.path() / "fast.cfg").string() +
                        " --out " + (dir.path() / "out").string(),
                    dir.path()) == 0);
    CHECK(fs::exists(dir.path() / "out" / "manifest.txt"));
    CHECK(fs::exists(dir.path() / "out" / "phantom_000" / "pleural+merlin" / "frame_00.pgm"));

    const std::string manifest = test::read_file_bytes(dir.path() / "out" / "manifest.txt");
    CHECK(manifest.find("balanced_train 4\n") != std::string::npos);
    CHECK(manifest.find("overlap 0") != std::string::npos);

    // patient overlap -> exit 6
    test::write_file(dir.path() / "overlap.txt",
                     "clips/phantom_000 0 pa train\n"
                     "clips/phantom_001 1 pb train\n"
                     "clips/phantom_002 2 pc train\n"
                     "clips/phantom_003 3 pa test\n");
    CHECK(run_cli("pipeline --index " + (dir.path() / "overlap.txt").string() + " --seed 3 " +
                      "--config " + (dir.path() / "fast.cfg").string() + " --out " +
                      (dir.path() / "out2").string(),
                  dir.path()) == 6);
}
