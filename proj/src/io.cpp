#include "lus/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace lus {

namespace fs = std::filesystem;

std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

namespace {

double parse_double(const std::string& s) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(s, &pos);
        if (pos != s.size())
            raise(Errc::ParseError, "trailing characters in number: " + s);
        return v;
    } catch (const Error&) {
        throw;
    } catch (const std::exception&) {
        raise(Errc::ParseError, "not a number: " + s);
    }
}

long parse_long(const std::string& s) {
    try {
        std::size_t pos = 0;
        const long v = std::stol(s, &pos);
        if (pos != s.size())
            raise(Errc::ParseError, "trailing characters in integer: " + s);
        return v;
    } catch (const Error&) {
        throw;
    } catch (const std::exception&) {
        raise(Errc::ParseError, "not an integer: " + s);
    }
}

std::vector<std::string> split_ws(const std::string& line) {
    std::vector<std::string> out;
    std::istringstream iss(line);
    std::string tok;
    while (iss >> tok)
        out.push_back(tok);
    return out;
}

int pgm_next_int(std::istream& in) {
    // skip whitespace and '#' comments
    for (;;) {
        const int c = in.peek();
        if (c == '#') {
            std::string junk;
            std::getline(in, junk);
        } else if (std::isspace(c)) {
            in.get();
        } else {
            break;
        }
    }
    int v = 0;
    if (!(in >> v))
        raise(Errc::ParseError, "malformed PGM header");
    return v;
}

std::uint8_t quantize(double v) {
    const double c = std::clamp(v, 0.0, 255.0);
    return static_cast<std::uint8_t>(std::lround(c));
}

} // namespace

Frame read_pgm(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        raise(Errc::IoError, "cannot open " + path.string());
    char magic[2] = {0, 0};
    in.read(magic, 2);
    if (magic[0] != 'P' || magic[1] != '5')
        raise(Errc::ParseError, path.string() + " is not a binary PGM (P5)");
    const int w = pgm_next_int(in);
    const int h = pgm_next_int(in);
    const int maxval = pgm_next_int(in);
    if (w < 1 || h < 1 || maxval < 1 || maxval > 255)
        raise(Errc::ParseError, "unsupported PGM geometry in " + path.string());
    in.get(); // the single whitespace byte after maxval
    std::vector<unsigned char> raw(static_cast<std::size_t>(w) * h);
    in.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
    if (static_cast<std::size_t>(in.gcount()) != raw.size())
        raise(Errc::ParseError, "truncated PGM data in " + path.string());
    std::vector<double> pixels(raw.begin(), raw.end());
    return Frame(w, h, std::move(pixels));
}

void atomic_write_bytes(const fs::path& path, const std::string& content) {
    if (path.has_parent_path())
        fs::create_directories(path.parent_path());
    const fs::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out)
            raise(Errc::IoError, "cannot write " + tmp.string());
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!out)
            raise(Errc::IoError, "short write to " + tmp.string());
    }
    fs::rename(tmp, path);
}

void atomic_write_text(const fs::path& path, const std::string& content) {
    atomic_write_bytes(path, content);
}

void write_pgm(const fs::path& path, const Frame& frame) {
    std::string data = "P5\n" + std::to_string(frame.width()) + " " +
                       std::to_string(frame.height()) + "\n255\n";
    data.reserve(data.size() + frame.size());
    for (double v : frame.pixels())
        data.push_back(static_cast<char>(quantize(v)));
    atomic_write_bytes(path, data);
}

void write_pgm(const fs::path& path, const BinaryMask& mask) {
    std::string data =
        "P5\n" + std::to_string(mask.width) + " " + std::to_string(mask.height) + "\n255\n";
    data.reserve(data.size() + mask.bits.size());
    for (std::uint8_t b : mask.bits)
        data.push_back(static_cast<char>(b ? 255 : 0));
    atomic_write_bytes(path, data);
}

Clip read_clip_dir(const fs::path& dir) {
    if (!fs::is_directory(dir))
        raise(Errc::IoError, dir.string() + " is not a directory");
    std::vector<fs::path> paths;
    for (const auto& entry : fs::directory_iterator(dir))
        if (entry.is_regular_file() && entry.path().extension() == ".pgm")
            paths.push_back(entry.path());
    std::sort(paths.begin(), paths.end());
    if (paths.empty())
        raise(Errc::IoError, "no PGM frames in " + dir.string());
    std::vector<Frame> frames;
    frames.reserve(paths.size());
    for (const fs::path& p : paths)
        frames.push_back(read_pgm(p));
    return clip_new(std::move(frames));
}

void write_clip_dir(const fs::path& dir, const Clip& clip) {
    fs::create_directories(dir);
    for (std::size_t i = 0; i < clip.frames.size(); ++i) {
        char name[32];
        std::snprintf(name, sizeof(name), "frame_%04zu.pgm", i);
        write_pgm(dir / name, clip.frames[i]);
    }
}

namespace {

void format_piecewise(std::ostringstream& out, const char* tag, const PiecewiseCurve& c) {
    out << tag << " degree " << c.poly.degree() << "\n";
    out << tag << " domain " << format_double(c.poly.x_min()) << " " << format_double(c.poly.x_max())
        << "\n";
    out << tag << " coeffs";
    for (double v : c.poly.coefficients())
        out << " " << format_double(v);
    out << "\n";
    out << tag << " slopes " << format_double(c.slope_lo) << " " << format_double(c.slope_hi)
        << "\n";
    out << tag << " ext " << format_double(c.extension) << "\n";
}

class LineReader {
public:
    explicit LineReader(const std::string& text) : in_(text) {}

    // next non-empty line's tokens
    std::vector<std::string> next() {
        std::string line;
        while (std::getline(in_, line)) {
            auto toks = split_ws(line);
            if (!toks.empty())
                return toks;
        }
        raise(Errc::ParseError, "unexpected end of record");
    }

    std::vector<std::string> expect(const std::string& k0, const std::string& k1 = "") {
        auto toks = next();
        if (toks[0] != k0 || (!k1.empty() && (toks.size() < 2 || toks[1] != k1)))
            raise(Errc::ParseError, "expected '" + k0 + (k1.empty() ? "" : " " + k1) +
                                        "' but found '" + toks[0] + "'");
        return toks;
    }

private:
    std::istringstream in_;
};

PiecewiseCurve parse_piecewise(LineReader& r, const std::string& tag) {
    auto deg = r.expect(tag, "degree");
    const int degree = static_cast<int>(parse_long(deg.at(2)));
    auto dom = r.expect(tag, "domain");
    const double x_min = parse_double(dom.at(2));
    const double x_max = parse_double(dom.at(3));
    auto co = r.expect(tag, "coeffs");
    if (static_cast<int>(co.size()) != degree + 3)
        raise(Errc::ParseError, "coefficient count does not match degree");
    std::vector<double> coeffs;
    for (std::size_t i = 2; i < co.size(); ++i)
        coeffs.push_back(parse_double(co[i]));
    auto sl = r.expect(tag, "slopes");
    auto ex = r.expect(tag, "ext");
    PiecewiseCurve c;
    c.poly = Curve(std::move(coeffs), x_min, x_max);
    c.slope_lo = parse_double(sl.at(2));
    c.slope_hi = parse_double(sl.at(3));
    c.extension = parse_double(ex.at(2));
    return c;
}

std::vector<int> parse_rows(const std::vector<std::string>& toks, std::size_t expected) {
    if (toks.size() != expected + 1)
        raise(Errc::ParseError, "row count does not match width");
    std::vector<int> rows;
    rows.reserve(expected);
    for (std::size_t i = 1; i < toks.size(); ++i)
        rows.push_back(static_cast<int>(parse_long(toks[i])));
    return rows;
}

} // namespace

std::string format_segmentation(const PleuralSegmentation& seg, const SegmentationParams& params) {
    std::ostringstream out;
    out << "lus-curves v1\n";
    out << "width " << seg.width << "\n";
    out << "height " << seg.height << "\n";
    out << "work_size " << params.work_size << "\n";
    format_piecewise(out, "lower", seg.lower);
    format_piecewise(out, "upper", seg.upper);
    out << "lower_rows";
    for (int r : seg.lower_rows())
        out << " " << r;
    out << "\nupper_rows";
    for (int r : seg.upper_rows())
        out << " " << r;
    out << "\ncandidates " << seg.work_candidates.size() << "\n";
    for (const PointI& p : seg.work_candidates)
        out << "candidate " << p.x << " " << p.y << "\n";
    return out.str();
}

PleuralSegmentation parse_segmentation(const std::string& text) {
    LineReader r(text);
    r.expect("lus-curves");
    PleuralSegmentation seg;
    seg.width = static_cast<int>(parse_long(r.expect("width").at(1)));
    seg.height = static_cast<int>(parse_long(r.expect("height").at(1)));
    r.expect("work_size");
    seg.lower = parse_piecewise(r, "lower");
    seg.upper = parse_piecewise(r, "upper");
    parse_rows(r.expect("lower_rows"), static_cast<std::size_t>(seg.width));
    parse_rows(r.expect("upper_rows"), static_cast<std::size_t>(seg.width));
    const auto cand = r.expect("candidates");
    const long n = parse_long(cand.at(1));
    for (long i = 0; i < n; ++i) {
        auto toks = r.expect("candidate");
        seg.work_candidates.push_back({static_cast<int>(parse_long(toks.at(1))),
                                       static_cast<int>(parse_long(toks.at(2)))});
    }
    // Rows and the band are derived from the curves, so they always agree
    // with what the writer computed.
    seg.band = band_between(seg.width, seg.height, seg.upper_rows(), seg.lower_rows());
    return seg;
}

PleuralSegmentation read_segmentation(const fs::path& path) {
    std::ifstream in(path);
    if (!in)
        raise(Errc::IoError, "cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_segmentation(ss.str());
}

std::string format_truth(const PhantomTruth& truth) {
    std::ostringstream out;
    out << "lus-truth v1\n";
    out << "width " << truth.regions.width << "\n";
    out << "height " << truth.regions.height << "\n";
    out << "score " << truth.score.value() << "\n";
    out << "lower_rows";
    for (int r : truth.lower_rows)
        out << " " << r;
    out << "\nupper_rows";
    for (int r : truth.upper_rows)
        out << " " << r;
    out << "\n";
    return out.str();
}

PhantomTruth read_truth(const fs::path& path) {
    std::ifstream in(path);
    if (!in)
        raise(Errc::IoError, "cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    LineReader r(ss.str());
    r.expect("lus-truth");
    const int w = static_cast<int>(parse_long(r.expect("width").at(1)));
    const int h = static_cast<int>(parse_long(r.expect("height").at(1)));
    const int score = static_cast<int>(parse_long(r.expect("score").at(1)));
    PhantomTruth t;
    t.lower_rows = parse_rows(r.expect("lower_rows"), static_cast<std::size_t>(w));
    t.upper_rows = parse_rows(r.expect("upper_rows"), static_cast<std::size_t>(w));
    t.regions = region_partition_rows(w, h, t.upper_rows, t.lower_rows);
    t.score = SeverityScore(score);
    return t;
}

DatasetIndex read_index(const fs::path& path) {
    std::ifstream in(path);
    if (!in)
        raise(Errc::IoError, "cannot open index " + path.string());
    DatasetIndex index;
    std::string line;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos)
            line.resize(hash);
        const auto toks = split_ws(line);
        if (toks.empty())
            continue;
        if (toks.size() != 4)
            raise(Errc::ParseError, "index line needs `path score patient split`: " + line);
        if (toks[3] != "train" && toks[3] != "test")
            raise(Errc::ParseError, "split must be train or test: " + toks[3]);
        DatasetEntry e;
        e.clip_id = toks[0];
        e.score = SeverityScore(static_cast<int>(parse_long(toks[1])));
        e.patient_id = toks[2];
        e.split = toks[3];
        index.entries.push_back(std::move(e));
    }
    return index;
}

std::string format_index(const DatasetIndex& index) {
    std::ostringstream out;
    out << "# path score patient split\n";
    for (const DatasetEntry& e : index.entries)
        out << e.clip_id << " " << e.score.value() << " " << e.patient_id << " " << e.split << "\n";
    return out.str();
}

PhantomSpec read_phantom_spec(const fs::path& path) {
    std::ifstream in(path);
    if (!in)
        raise(Errc::IoError, "cannot open phantom spec " + path.string());
    PhantomSpec spec;
    std::string line;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos)
            line.resize(hash);
        const auto toks = split_ws(line);
        if (toks.empty())
            continue;
        const std::string& key = toks[0];
        auto val = [&toks, &key](std::size_t i = 1) -> const std::string& {
            if (i >= toks.size())
                raise(Errc::ParseError, "missing value for " + key);
            return toks[i];
        };
        if (key == "width")
            spec.width = static_cast<int>(parse_long(val()));
        else if (key == "height")
            spec.height = static_cast<int>(parse_long(val()));
        else if (key == "pleura_curve") {
            for (std::size_t i = 0; i < 4; ++i)
                spec.pleura_curve[i] = parse_double(val(i + 1));
        } else if (key == "band_thickness")
            spec.band_thickness = static_cast<int>(parse_long(val()));
        else if (key == "n_blines")
            spec.n_blines = static_cast<int>(parse_long(val()));
        else if (key == "a_lines")
            spec.a_lines = parse_long(val()) != 0;
        else if (key == "consolidation")
            spec.consolidation = parse_long(val()) != 0;
        else if (key == "speckle_sigma")
            spec.speckle_sigma = parse_double(val());
        else if (key == "subq_layers")
            spec.subq_layers = static_cast<int>(parse_long(val()));
        else if (key == "n_frames")
            spec.n_frames = static_cast<int>(parse_long(val()));
        else if (key == "b_line_width")
            spec.b_line_width = static_cast<int>(parse_long(val()));
        else if (key == "seed")
            spec.seed = static_cast<std::uint64_t>(parse_long(val()));
        else if (key == "score")
            spec.declared_score = static_cast<int>(parse_long(val()));
        else
            raise(Errc::ParseError, "unknown phantom spec key: " + key);
    }
    return spec;
}

std::string format_phantom_spec(const PhantomSpec& spec) {
    std::ostringstream out;
    out << "width " << spec.width << "\n";
    out << "height " << spec.height << "\n";
    out << "pleura_curve " << format_double(spec.pleura_curve[0]) << " "
        << format_double(spec.pleura_curve[1]) << " " << format_double(spec.pleura_curve[2]) << " "
        << format_double(spec.pleura_curve[3]) << "\n";
    out << "band_thickness " << spec.band_thickness << "\n";
    out << "n_blines " << spec.n_blines << "\n";
    out << "a_lines " << (spec.a_lines ? 1 : 0) << "\n";
    out << "consolidation " << (spec.consolidation ? 1 : 0) << "\n";
    out << "speckle_sigma " << format_double(spec.speckle_sigma) << "\n";
    out << "subq_layers " << spec.subq_layers << "\n";
    out << "n_frames " << spec.n_frames << "\n";
    out << "b_line_width " << spec.b_line_width << "\n";
    if (spec.declared_score)
        out << "score " << *spec.declared_score << "\n";
    return out.str();
}

ScoresFile read_scores_csv(const fs::path& path) {
    std::ifstream in(path);
    if (!in)
        raise(Errc::IoError, "cannot open scores file " + path.string());
    std::string line;
    if (!std::getline(in, line))
        raise(Errc::ParseError, "empty scores file");
    if (!line.empty() && line.back() == '\r')
        line.pop_back();
    if (line != "clip_id,true,score0,score1,score2,score3")
        raise(Errc::ParseError, "scores file needs header clip_id,true,score0,score1,score2,score3");
    ScoresFile sf;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.empty())
            continue;
        std::vector<std::string> cells;
        std::istringstream iss(line);
        std::string cell;
        while (std::getline(iss, cell, ','))
            cells.push_back(cell);
        if (cells.size() != 6)
            raise(Errc::ParseError, "scores row needs 6 columns: " + line);
        ScoredRow row;
        row.truth = static_cast<int>(parse_long(cells[1]));
        if (row.truth < 0 || row.truth > 3)
            raise(Errc::ParseError, "true label outside {0..3}: " + cells[1]);
        for (std::size_t c = 0; c < 4; ++c)
            row.scores[c] = parse_double(cells[c + 2]);
        sf.clip_ids.push_back(cells[0]);
        sf.predictions.rows.push_back(row);
    }
    sf.predictions.validate();
    return sf;
}

PipelineConfig PipelineConfig::from_file(const fs::path& path) {
    std::ifstream in(path);
    if (!in)
        raise(Errc::IoError, "cannot open config " + path.string());
    PipelineConfig cfg;
    std::string line;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos)
            line.resize(hash);
        const auto toks = split_ws(line);
        if (toks.empty())
            continue;
        if (toks.size() != 2)
            raise(Errc::ParseError, "config line needs `key value`: " + line);
        cfg.apply_line(toks[0], toks[1]);
    }
    cfg.seg.validate();
    cfg.str.validate();
    cfg.sample.validate();
    return cfg;
}

void PipelineConfig::apply_line(const std::string& key, const std::string& value) {
    if (key == "work_size")
        seg.work_size = static_cast<int>(parse_long(value));
    else if (key == "sobel_factor")
        seg.sobel_factor = parse_double(value);
    else if (key == "intensity_k")
        seg.intensity_k = parse_double(value);
    else if (key == "dilate_iters")
        seg.dilate_iters = static_cast<int>(parse_long(value));
    else if (key == "poly_degree")
        seg.poly_degree = static_cast<int>(parse_long(value));
    else if (key == "tangent_extension")
        seg.tangent_extension = parse_double(value);
    else if (key == "max_band_thickness")
        seg.max_band_thickness = static_cast<int>(parse_long(value));
    else if (key == "crop_margin")
        str.crop_margin = static_cast<int>(parse_long(value));
    else if (key == "target_row")
        str.target_row = static_cast<int>(parse_long(value));
    else if (key == "fill_value")
        str.fill_value = parse_double(value);
    else if (key == "n_segments")
        sample.n_segments = static_cast<int>(parse_long(value));
    else if (key == "target_size")
        sample.target_size = static_cast<int>(parse_long(value));
    else if (key == "flip_prob")
        sample.flip_prob = parse_double(value);
    else if (key == "scale_lo")
        sample.scale_lo = parse_double(value);
    else if (key == "scale_hi")
        sample.scale_hi = parse_double(value);
    else if (key == "context_margin")
        mask.context_margin = static_cast<int>(parse_long(value));
    else
        raise(Errc::ParseError, "unknown config key: " + key);
}

} // namespace lus
