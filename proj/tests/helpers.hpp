#pragma once

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <unistd.h>

#include "lus/image.hpp"
#include "lus/rng.hpp"

namespace lus::test {

inline Frame constant_frame(int w, int h, double v) {
    Frame f = Frame::zeros(w, h);
    for (double& p : f.pixels())
        p = v;
    return f;
}

inline Frame random_frame(Rng& rng, int w, int h, double lo = 0.0, double hi = 255.0) {
    Frame f = Frame::zeros(w, h);
    for (double& p : f.pixels())
        p = rng.uniform(lo, hi);
    return f;
}

// Scratch directory under the system temp root, removed on destruction.
class TempDir {
public:
    explicit TempDir(const std::string& tag) {
        static int counter = 0;
        path_ = std::filesystem::temp_directory_path() /
                ("lus_test_" + tag + "_" + std::to_string(::getpid()) + "_" +
                 std::to_string(counter++));
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    const std::filesystem::path& path() const { return path_; }

private:
    std::filesystem::path path_;
};

#ifdef LUS_CLI_PATH
inline int run_cli(const std::string& args, const std::filesystem::path& capture_dir,
                   std::string* out = nullptr, std::string* err = nullptr) {
    const std::filesystem::path out_file = capture_dir / "stdout.txt";
    const std::filesystem::path err_file = capture_dir / "stderr.txt";
    const std::string cmd = std::string(LUS_CLI_PATH) + " " + args + " > " + out_file.string() +
                            " 2> " + err_file.string();
    const int status = std::system(cmd.c_str());
    auto slurp = [](const std::filesystem::path& p) {
        std::ifstream in(p);
        std::ostringstream ss;
        ss << in.rdbuf();
        return ss.str();
    };
    if (out)
        *out = slurp(out_file);
    if (err)
        *err = slurp(err_file);
    if (status == -1)
        return -1;
    return WEXITSTATUS(status);
}
#endif // LUS_CLI_PATH

inline std::string read_file_bytes(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void write_file(const std::filesystem::path& p, const std::string& content) {
    std::filesystem::create_directories(p.parent_path());
    std::ofstream out(p, std::ios::binary);
    out << content;
}

} // namespace lus::test
