// Command-line front end.  Verbs: family list, build, pearson derive,
// pearson verify, operator classify, orthocheck, report all.  Options may
// come from flags or from a JSON config file (--config); flags win.  All
// failures print one "error: ..." line on stderr and exit nonzero.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "kwp/report.hpp"

namespace {

using kwp::Json;

struct CliValues {
    std::string config_path;
    std::string family;
    std::vector<std::string> params;
    int nmax = 0;
    int precision = 0;
    double tol = 0;
    std::string out;
    std::string format;
    std::string pair_path;
};

// Registers the options shared by every report-producing verb.
void add_common(CLI::App* cmd, CliValues& v) {
    cmd->add_option("--config", v.config_path, "JSON config file; flags override its values");
    cmd->add_option("--family", v.family, "family name (see: family list)");
    cmd->add_option("--param", v.params, "family parameter as name=value, value a rational")
        ->take_all();
    cmd->add_option("--nmax", v.nmax, "maximum total degree");
    cmd->add_option("--precision", v.precision, "working precision in decimal digits");
    cmd->add_option("--tol", v.tol, "numeric tolerance for the orthogonality check");
    cmd->add_option("--out", v.out, "output path (default: stdout)");
    cmd->add_option("--format", v.format, "output format: json or markdown");
}

Json read_json_file(const std::string& path, const std::string& what) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + what + " file " + path);
    Json j;
    try {
        in >> j;
    } catch (const Json::parse_error& e) {
        throw std::runtime_error(what + " file " + path + " is not valid JSON: " + e.what());
    }
    return j;
}

std::pair<std::string, kwp::Rat> parse_param(const std::string& text) {
    auto eq = text.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 == text.size())
        throw std::invalid_argument("param must look like name=value, got " + text);
    std::string name = text.substr(0, eq);
    try {
        return {name, kwp::rat_parse(text.substr(eq + 1))};
    } catch (const std::invalid_argument& e) {
        throw std::invalid_argument("param " + name + ": " + e.what());
    }
}

kwp::RunConfig merge_config(const CLI::App* cmd, const CliValues& v) {
    kwp::RunConfig cfg;
    if (cmd->count("--config") > 0) cfg = kwp::config_from_json(read_json_file(v.config_path, "config"));
    if (cmd->count("--family") > 0) cfg.family = v.family;
    for (const auto& p : v.params) {
        auto [name, value] = parse_param(p);
        cfg.params[name] = value;
    }
    if (cmd->count("--nmax") > 0) cfg.nmax = v.nmax;
    if (cmd->count("--precision") > 0) cfg.digits = v.precision;
    if (cmd->count("--tol") > 0) cfg.tol = v.tol;
    if (cmd->count("--out") > 0) cfg.out = v.out;
    if (cmd->count("--format") > 0) cfg.format = v.format;
    if (cfg.family.empty())
        throw std::invalid_argument("missing --family (or a family key in --config)");
    return cfg;
}

Json family_list_report() {
    Json rep;
    rep["tool"] = kwp::kToolName;
    rep["version"] = kwp::kToolVersion;
    Json fams = Json::array();
    for (const auto& d : kwp::family_catalog()) {
        Json f;
        f["name"] = d.name;
        f["params"] = d.params;
        f["constraints"] = d.constraints;
        f["weight"] = d.weight;
        f["domain"] = d.domain;
        f["rho"] = d.rho;
        fams.push_back(std::move(f));
    }
    rep["families"] = std::move(fams);
    return rep;
}

std::string family_list_markdown(const Json& rep) {
    std::string out = "# Built-in families\n\n";
    for (const auto& f : rep.at("families")) {
        out += "- " + f.at("name").get<std::string>() + ": w(x, y) = " +
               f.at("weight").get<std::string>() + " on " + f.at("domain").get<std::string>() +
               "\n";
        std::string params;
        for (const auto& p : f.at("params")) {
            if (!params.empty()) params += ", ";
            params += p.get<std::string>();
        }
        out += "  - params: " + params + " (" + f.at("constraints").get<std::string>() + ")\n";
        out += "  - rho(x) = " + f.at("rho").get<std::string>() + "\n";
    }
    return out;
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path);
    if (!out) throw std::runtime_error("cannot write output file " + out_path);
    out << text;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact Pearson systems and operators for bivariate orthogonal polynomials"};
    app.require_subcommand(1);
    app.failure_message([](const CLI::App*, const CLI::Error& e) {
        return std::string("error: ") + e.what() + "\n";
    });

    CliValues v;

    CLI::App* family = app.add_subcommand("family", "inspect the family catalog");
    family->require_subcommand(1);
    CLI::App* family_list = family->add_subcommand("list", "list the built-in families");
    std::string list_out, list_format = "json";
    family_list->add_option("--out", list_out, "output path (default: stdout)");
    family_list->add_option("--format", list_format, "output format: json or markdown");

    CLI::App* build = app.add_subcommand("build", "construct the orthogonal basis");
    add_common(build, v);

    CLI::App* pearson = app.add_subcommand("pearson", "derive or verify Pearson pairs");
    pearson->require_subcommand(1);
    CLI::App* derive = pearson->add_subcommand("derive", "derive candidate pairs");
    add_common(derive, v);
    CLI::App* verify = pearson->add_subcommand("verify", "verify a claimed pair or identity");
    add_common(verify, v);
    verify->add_option("--pair", v.pair_path, "JSON file with the claim to check")->required();

    CLI::App* op = app.add_subcommand("operator", "study the second-order operator");
    op->require_subcommand(1);
    CLI::App* classify = op->add_subcommand("classify", "classify the operator action");
    add_common(classify, v);

    CLI::App* ortho = app.add_subcommand("orthocheck", "numeric orthogonality cross-check");
    add_common(ortho, v);

    CLI::App* report = app.add_subcommand("report", "combined reports");
    report->require_subcommand(1);
    CLI::App* report_all = report->add_subcommand("all", "run every stage and combine");
    add_common(report_all, v);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (family_list->parsed()) {
            if (list_format != "json" && list_format != "markdown")
                throw std::invalid_argument("format must be json or markdown, got " + list_format);
            Json rep = family_list_report();
            emit(list_format == "markdown" ? family_list_markdown(rep) : rep.dump(2) + "\n",
                 list_out);
            return 0;
        }

        const CLI::App* leaf = build->parsed()        ? build
                               : derive->parsed()     ? derive
                               : verify->parsed()     ? verify
                               : classify->parsed()   ? classify
                               : ortho->parsed()      ? ortho
                               : report_all->parsed() ? report_all
                                                      : nullptr;
        if (leaf == nullptr) throw std::logic_error("no verb selected");
        kwp::RunConfig cfg = merge_config(leaf, v);
        kwp::validate_config(cfg);

        Json rep;
        if (leaf == build) {
            rep = kwp::cmd_build(cfg);
        } else if (leaf == derive) {
            rep = kwp::cmd_pearson_derive(cfg);
        } else if (leaf == verify) {
            rep = kwp::cmd_pearson_verify(cfg, read_json_file(v.pair_path, "claim"));
        } else if (leaf == classify) {
            rep = kwp::cmd_classify(cfg);
        } else if (leaf == ortho) {
            rep = kwp::cmd_orthocheck(cfg);
        } else {
            rep = kwp::cmd_report_all(cfg);
        }
        emit(kwp::report_text(rep, cfg.format), cfg.out);
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
