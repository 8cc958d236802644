#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include "CLI11.hpp"
#include "multigraded/commands.hpp"
#include "multigraded/error.hpp"

namespace {

std::string read_manifest(const std::string& path) {
    if (path == "-") return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open manifest '" + path + "'");
    std::ostringstream text;
    text << in.rdbuf();
    return text.str();
}

int report(const mg::CommandResult& result, bool json) {
    if (json)
        std::cout << nlohmann::ordered_json{{"exit_code", result.exit_code}, {"result", result.json}}.dump(2) << "\n";
    else
        (result.exit_code == 2 ? std::cerr : std::cout) << result.text;
    return result.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Multi-graded supermanifold computations"};
    std::vector<std::string> words;
    std::string manifest_path;
    bool json = false;
    app.add_option("words", words, "command followed by its names")->required();
    app.add_option("--manifest,-m", manifest_path, "manifest file, '-' for stdin");
    app.add_flag("--json", json, "emit a JSON document");
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    mg::Manifest manifest;
    try {
        if (!manifest_path.empty()) manifest = mg::parse_manifest(read_manifest(manifest_path));
    } catch (const std::exception& e) {
        return report({2, std::string("error: ") + e.what() + "\n", {{"error", e.what()}}}, json);
    }
    return report(mg::run_command(manifest, words), json);
}
