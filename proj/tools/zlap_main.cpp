#include <charconv>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "zlap/error.hpp"
#include "zlap/io.hpp"

namespace {

using nlohmann::json;

enum class Kind { Number, Integer, Word, NumList, IntList, Candidates, Flag };

struct OptionSpec {
  const char* name;  // CLI option, also the params key ('-' becomes '_')
  Kind kind;
  const char* help;
};

struct CommandSpec {
  const char* name;
  const char* help;
  std::vector<OptionSpec> options;
};

const std::vector<CommandSpec> kCommands = {
    {"transform",
     "Build a transformed graph, shift operator or Laplacian",
     {{"op", Kind::Word,
       "bias | delay | random_walk | consensus | replicator | sis | nonnegative | dual | "
       "parameterized | zlaplacian | similarity"},
      {"B", Kind::NumList, "bias factors (scalar or comma list)"},
      {"T", Kind::NumList, "delay factors (scalar or comma list)"},
      {"Z", Kind::NumList, "replicating factors (scalar or comma list)"},
      {"rho", Kind::Number, "basis parameter in [0,1]"},
      {"mu", Kind::Number, "SIS infecting probability"},
      {"beta", Kind::Number, "SIS curing probability"}}},
    {"evolve",
     "Evolve a signal under a discrete filter or continuous Z-Laplacian",
     {{"mode", Kind::Word, "discrete | continuous (inferred from steps/t when omitted)"},
      {"theta0", Kind::NumList, "initial signal (scalar broadcast or comma list)"},
      {"steps", Kind::Integer, "discrete step count"},
      {"t", Kind::Number, "continuous evolution time"},
      {"op", Kind::Word, "discrete shift recipe (default random_walk)"},
      {"Z", Kind::NumList, "replicating factors"},
      {"T", Kind::NumList, "delay factors"},
      {"mu", Kind::Number, "SIS infecting probability"},
      {"beta", Kind::Number, "SIS curing probability"},
      {"coeffs", Kind::NumList, "polynomial filter coefficients h0,h1,..."},
      {"epsilon", Kind::Number, "uniformization tail tolerance"}}},
    {"spectrum",
     "Eigenvalues (and optionally eigenvectors) of a candidate Laplacian",
     {{"which", Kind::Word, "L0 | L1 | L2"},
      {"Z", Kind::NumList, "replicating factors for L2"},
      {"vectors", Kind::Flag, "include eigenvectors in the report"}}},
    {"filter",
     "Band-filter a candidate Laplacian and reconstruct the adjacency",
     {{"which", Kind::Word, "L0 | L1 | L2"},
      {"Z", Kind::NumList, "replicating factors for L2"},
      {"k", Kind::Integer, "band size (number of smallest eigenvalues)"},
      {"band", Kind::Word, "low | high"},
      {"x", Kind::Number, "also emit the top x% edges of the reconstruction"}}},
    {"bottleneck",
     "Minimum-conductance bottleneck (or conductance of a given subset)",
     {{"method", Kind::Word, "brute | sweep"},
      {"protocol", Kind::Word, "base | random_access | tdma_saturated | tdma_matched"},
      {"subset", Kind::IntList, "evaluate this subset instead of minimizing"}}},
    {"heal",
     "Rank candidate edges by the bottleneck conductance after insertion",
     {{"protocol", Kind::Word, "base | random_access | tdma_saturated | tdma_matched"},
      {"candidates", Kind::Candidates, "edges to try, e.g. 0-3,1-2"},
      {"bandwidth", Kind::Number, "weight of the inserted edge"},
      {"delay-update", Kind::Flag, "recompute protocol delays from the new degrees"},
      {"method", Kind::Word, "brute | sweep"}}},
    {"epidemic",
     "SIS threshold classification",
     {{"mu", Kind::Number, "infecting probability"},
      {"beta", Kind::Number, "curing probability"},
      {"z", Kind::Number, "replicating factor for the generalized threshold"}}},
};

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : text) {
    if (c == sep) {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  parts.push_back(cur);
  return parts;
}

double to_number(const std::string& token) {
  double value = 0.0;
  const auto res = std::from_chars(token.data(), token.data() + token.size(), value);
  if (res.ec != std::errc{} || res.ptr != token.data() + token.size())
    throw zlap::input_error("'" + token + "' is not a number");
  return value;
}

long to_integer(const std::string& token) {
  long value = 0;
  const auto res = std::from_chars(token.data(), token.data() + token.size(), value);
  if (res.ec != std::errc{} || res.ptr != token.data() + token.size())
    throw zlap::input_error("'" + token + "' is not an integer");
  return value;
}

json convert_value(Kind kind, const std::string& text) {
  switch (kind) {
    case Kind::Number:
      return to_number(text);
    case Kind::Integer:
      return to_integer(text);
    case Kind::Word:
      return text;
    case Kind::NumList: {
      if (text.find(',') == std::string::npos) return to_number(text);
      json arr = json::array();
      for (const std::string& part : split(text, ',')) arr.push_back(to_number(part));
      return arr;
    }
    case Kind::IntList: {
      json arr = json::array();
      for (const std::string& part : split(text, ',')) arr.push_back(to_integer(part));
      return arr;
    }
    case Kind::Candidates: {
      json arr = json::array();
      for (const std::string& part : split(text, ',')) {
        const std::vector<std::string> uv = split(part, '-');
        if (uv.size() != 2)
          throw zlap::input_error("candidate '" + part + "' must look like u-v");
        arr.push_back(json::array({to_integer(uv[0]), to_integer(uv[1])}));
      }
      return arr;
    }
    case Kind::Flag:
      return true;
  }
  return nullptr;
}

std::string params_key(const std::string& option) {
  std::string key = option;
  for (char& c : key) {
    if (c == '-') c = '_';
  }
  return key;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"zlap: Z-Laplacian graph shift, dynamics and bottleneck toolkit"};
  app.require_subcommand(1);

  struct SubState {
    CLI::App* sub = nullptr;
    std::string graph, params_path, out, format = "json";
    std::map<std::string, std::string> values;
    std::map<std::string, bool> flags;
  };
  std::map<std::string, SubState> state;

  for (const CommandSpec& spec : kCommands) {
    SubState& st = state[spec.name];
    st.sub = app.add_subcommand(spec.name, spec.help);
    st.sub->add_option("--graph", st.graph, "edge-list file");
    st.sub->add_flag("--directed", "treat the edge list as directed");
    st.sub->add_option("--params", st.params_path,
                       "JSON scenario file or params fragment");
    st.sub->add_option("--out", st.out, "output path (default stdout)");
    st.sub->add_option("--format", st.format, "json | csv")->capture_default_str();
    for (const OptionSpec& opt : spec.options) {
      const std::string flag = "--" + std::string(opt.name);
      if (opt.kind == Kind::Flag)
        st.sub->add_flag(flag, st.flags[opt.name], opt.help);
      else
        st.sub->add_option(flag, st.values[opt.name], opt.help);
    }
  }

  CLI11_PARSE(app, argc, argv);

  try {
    const CommandSpec* spec = nullptr;
    const SubState* st = nullptr;
    for (const CommandSpec& s : kCommands) {
      if (state[s.name].sub->parsed()) {
        spec = &s;
        st = &state[s.name];
        break;
      }
    }
    if (!spec) throw zlap::input_error("no command given");

    zlap::Scenario scenario;
    scenario.command = spec->name;
    if (!st->params_path.empty()) {
      const json loaded = json::parse(zlap::read_file(st->params_path), nullptr, true, true);
      const std::string dir = std::filesystem::path(st->params_path).parent_path().string();
      scenario = zlap::scenario_from_json(loaded, spec->name, dir);
    }
    if (!st->graph.empty()) scenario.graph_path = st->graph;
    if (st->sub->count("--directed") > 0) scenario.directed = true;
    for (const OptionSpec& opt : spec->options) {
      const std::string flag = "--" + std::string(opt.name);
      if (st->sub->count(flag) == 0) continue;
      if (opt.kind == Kind::Flag)
        scenario.params[params_key(opt.name)] = true;
      else
        scenario.params[params_key(opt.name)] = convert_value(opt.kind, st->values.at(opt.name));
    }

    const zlap::Report report = zlap::run_scenario(scenario);
    const std::string text =
        zlap::emit_report(report, zlap::format_from_name(st->format));
    if (st->out.empty())
      std::cout << text;
    else
      zlap::write_file(st->out, text);
    return 0;
  } catch (const zlap::numerical_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const zlap::input_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
