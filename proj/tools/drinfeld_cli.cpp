#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "drinfeld/errors.hpp"
#include "drinfeld/report.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Exact arithmetic for Drinfeld modules: periods, quasi-periods, "
                 "difference-equation trivializations, endomorphisms, and "
                 "bounded-height linear relations"};

    std::string command;
    std::string config_path;
    std::string out_path;
    std::string format = "json";
    int precision = -1, t_trunc = -1, deg_cap = -1, branch = -1;

    app.add_option("command", command,
                   "exp | log | period | agf | quasiperiod | period-matrix | verify-triv | "
                   "ext | endos | galois-dim | relations | full-report "
                   "(optional; overrides the config file)");
    app.add_option("--config", config_path, "Path to the JSON job config")->required();
    app.add_option("--precision", precision, "Period tower depth override");
    app.add_option("--t-trunc", t_trunc, "Tate-series truncation override");
    app.add_option("--deg-cap", deg_cap, "Relation-finder degree bound override");
    app.add_option("--branch", branch, "Torsion branch override");
    app.add_option("--out", out_path, "Write the report here instead of stdout");
    app.add_option("--format", format, "Output format")
        ->check(CLI::IsMember({"json", "text"}));

    CLI11_PARSE(app, argc, argv);

    try {
        std::ifstream in(config_path);
        if (!in) {
            std::cerr << "error: cannot open config '" << config_path << "'\n";
            return 2;
        }
        drinfeld::Json config = drinfeld::Json::parse(in);
        if (!command.empty()) config["command"] = command;
        if (precision >= 0) config["precision"] = precision;
        if (t_trunc >= 0) config["t_trunc"] = t_trunc;
        if (deg_cap >= 0) config["deg_cap"] = deg_cap;
        if (branch >= 0) config["branch"] = branch;

        drinfeld::Json report = drinfeld::run(config);
        std::string rendered =
            format == "text" ? drinfeld::render_text(report) : report.dump(2) + "\n";
        if (out_path.empty()) {
            std::cout << rendered;
        } else {
            std::ofstream out(out_path);
            out << rendered;
        }
        return report["pass"].get<bool>() ? 0 : 1;
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 2;
    }
}
