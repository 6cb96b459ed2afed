// geodlab <count|shift|walk|ff|bt|graph> <verb> [--flags]

#include <fstream>
#include <iostream>

#include <json.hpp>

#include "commands.hpp"

namespace {

int fail(const std::string& code, const std::string& module, const std::string& op, const std::string& detail) {
    nlohmann::ordered_json rec = {{"error", code}, {"module", module}, {"op", op}, {"detail", detail}};
    std::cerr << rec.dump() << '\n';
    return 2;
}

} // namespace

namespace geodlab::cli {

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    for (;;) {
        const std::size_t k = s.find(sep, start);
        out.push_back(s.substr(start, k == std::string::npos ? std::string::npos : k - start));
        if (k == std::string::npos) return out;
        start = k + 1;
    }
}

std::vector<double> parse_reals(const std::string& s) {
    std::vector<double> out;
    for (const auto& part : split(s, ',')) {
        std::size_t used = 0;
        double x = 0;
        try {
            x = std::stod(part, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || part.find_first_not_of(" \t", used) != std::string::npos)
            throw Error("usage", "cli", "parse", "not a real number: \"" + part + "\"");
        out.push_back(x);
    }
    return out;
}

std::vector<int> parse_ints(const std::string& s) {
    std::vector<int> out;
    for (double x : parse_reals(s)) {
        if (x != static_cast<int>(x)) throw Error("usage", "cli", "parse", "not an integer in \"" + s + "\"");
        out.push_back(static_cast<int>(x));
    }
    return out;
}

} // namespace geodlab::cli

int main(int argc, char** argv) {
    using namespace geodlab::cli;
    CLI::App app{"geodlab: counting, dynamics and arithmetic on trees and graphs of groups"};
    app.require_subcommand(1);
    std::string out_path, format = "csv";
    app.add_option("--out,-o", out_path, "Write the table here instead of stdout");
    app.add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    app.fallthrough();

    Runner run;
    add_count_commands(app, run);
    add_shift_commands(app, run);
    add_walk_commands(app, run);
    add_ff_commands(app, run);
    add_bt_commands(app, run);
    add_graph_commands(app, run);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        return fail("usage", "cli", "parse", e.what());
    }

    try {
        if (!run) return fail("usage", "cli", "run", "no verb selected");
        const Table t = run();
        std::ofstream file;
        std::ostream* os = &std::cout;
        if (!out_path.empty()) {
            file.open(out_path);
            if (!file) return fail("io", "cli", "write", "cannot open " + out_path);
            os = &file;
        }
        if (format == "json") write_json(*os, t);
        else write_csv(*os, t);
        os->flush();
        if (!*os) return fail("io", "cli", "write", "write failed");
    } catch (const geodlab::Error& e) {
        return fail(e.code(), e.module(), e.op(), e.detail());
    } catch (const std::exception& e) {
        return fail("internal", "cli", "run", e.what());
    }
    return 0;
}
