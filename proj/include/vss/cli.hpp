#ifndef VSS_CLI_HPP
#define VSS_CLI_HPP

#include "vss/model.hpp"
#include "vss/transform.hpp"

#include <nlohmann/json_fwd.hpp>

#include <optional>
#include <string>
#include <vector>

namespace vss {

// Exit codes shared by every command.
enum ExitCode : int {
    kExitOk = 0,
    kExitConfig = 2,
    kExitNumerical = 3,
    kExitThreshold = 4,
};

struct ScanBlock {
    std::string axis = "u";
    double fixed_real = 0.5;
    double other_re = 0.0;
    double other_im = 0.0;
    double upper = 10.0;
    double step = 0.05;
    std::string method = "hybrid";
    int n_coarse = 40;
    std::optional<double> l_theta;
};

struct PriceBlock {
    std::vector<double> strikes{1.0};
    std::vector<double> maturities; // empty: use model.maturity
    std::string method = "hybrid";
    int degree = 30;
    int n_coarse = 40;
    std::optional<double> l_theta;
};

struct McBlock {
    long paths = 100000;
    int steps = 500;
    bool antithetic = true;
    std::string payoff = "call";
    std::vector<double> strikes{1.0};
    std::vector<double> fourier_prices; // optional, aligned with strikes
};

struct CheckBlock {
    int points = 20;
    std::vector<int> n_list{20, 100};
    double threshold = 1e-8;
};

struct RunConfig {
    ModelParams model;
    int n = 200;
    std::uint64_t seed = 1;
    std::string output_path = "out.csv";
    std::string output_format = "csv"; // csv | json
    ScanBlock scan;
    PriceBlock price;
    McBlock mc;
    CheckBlock check;
};

void to_json(nlohmann::json& j, const RunConfig& c);
void from_json(const nlohmann::json& j, RunConfig& c);

RunConfig load_config(const std::string& path);

// Frozen CSV headers (golden-tested).
extern const char* kTransformScanHeader;
extern const char* kCrossingScanHeader;
extern const char* kPriceHeader;
extern const char* kMcHeader;
extern const char* kDetCheckHeader;

int cmd_transform_scan(const RunConfig& config);
int cmd_crossing_scan(const RunConfig& config);
int cmd_price(const RunConfig& config);
int cmd_mc_benchmark(const RunConfig& config);
int cmd_det_identity_check(const RunConfig& config);

// Entry point used by the vss binary: parses flags, loads the config,
// dispatches the subcommand, maps errors to exit codes.
int run_cli(int argc, char** argv);

} // namespace vss

#endif
