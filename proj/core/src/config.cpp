#include "topohex/config.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace topohex {

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r\n");
  return s.substr(begin, end - begin + 1);
}

double parse_double(const std::string& text, const std::string& what) {
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(text, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument("config: cannot parse " + what + " '" + text +
                                "'");
  }
  if (trim(text.substr(used)) != "") {
    throw std::invalid_argument("config: trailing characters in " + what +
                                " '" + text + "'");
  }
  return value;
}

int parse_int(const std::string& text, const std::string& what) {
  const double v = parse_double(text, what);
  const int i = static_cast<int>(std::lround(v));
  if (v != static_cast<double>(i)) {
    throw std::invalid_argument("config: " + what + " must be an integer");
  }
  return i;
}

std::vector<std::string> split_ws(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

}  // namespace

double parse_rfill(const std::string& text) {
  const std::string t = trim(text);
  if (t.empty()) throw std::invalid_argument("config: empty rfill");

  auto is_sqrt3 = [](const std::string& s) {
    return s == "sqrt3" || s == "sqrt(3)";
  };
  if (is_sqrt3(t)) return std::numbers::sqrt3;

  const auto star = t.find('*');
  if (star != std::string::npos) {
    const std::string head = trim(t.substr(0, star));
    const std::string tail = trim(t.substr(star + 1));
    if (!is_sqrt3(tail)) {
      throw std::invalid_argument("config: rfill expression must be "
                                  "'<k>*sqrt3', got '" + text + "'");
    }
    return parse_double(head, "rfill factor") * std::numbers::sqrt3;
  }
  return parse_double(t, "rfill");
}

void apply_config_file(RunConfig& cfg, const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::invalid_argument("config: cannot open '" + path + "'");
  }
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("config: line " + std::to_string(lineno) +
                                  " is not 'key = value'");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));

    if (key == "problem") {
      cfg.problem = value;
    } else if (key == "hnex") {
      cfg.hnex = parse_int(value, "hnex");
    } else if (key == "hney") {
      cfg.hney = parse_int(value, "hney");
    } else if (key == "rfill") {
      cfg.rfill = parse_rfill(value);
    } else if (key == "volfrac") {
      cfg.volfrac = parse_double(value, "volfrac");
    } else if (key == "penal") {
      cfg.penal = parse_double(value, "penal");
    } else if (key == "ft") {
      cfg.ft = parse_int(value, "ft");
    } else if (key == "nu") {
      cfg.nu = parse_double(value, "nu");
    } else if (key == "move") {
      cfg.move = parse_double(value, "move");
    } else if (key == "maxiter") {
      cfg.maxiter = parse_int(value, "maxiter");
    } else if (key == "change_tol") {
      cfg.change_tol = parse_double(value, "change_tol");
    } else if (key == "out") {
      cfg.outdir = value;
    } else if (key == "load") {
      const auto tok = split_ws(value);
      if (tok.size() != 4 && tok.size() != 5) {
        throw std::invalid_argument(
            "config: load needs '<x> <y> <x|y> <mag> [<case>]'");
      }
      CustomLoad l;
      l.x = parse_double(tok[0], "load x");
      l.y = parse_double(tok[1], "load y");
      if (tok[2] != "x" && tok[2] != "y") {
        throw std::invalid_argument("config: load direction must be x or y");
      }
      l.dir = tok[2][0];
      l.mag = parse_double(tok[3], "load magnitude");
      l.load_case = tok.size() == 5 ? parse_int(tok[4], "load case") : 1;
      cfg.custom.loads.push_back(l);
    } else if (key == "clamp") {
      const auto tok = split_ws(value);
      if (tok.empty() || tok.size() > 2) {
        throw std::invalid_argument(
            "config: clamp needs '<left|right|bottom|top> [xy|x|y]'");
      }
      CustomClamp c;
      if (tok[0] == "left") {
        c.edge = DomainEdge::left;
      } else if (tok[0] == "right") {
        c.edge = DomainEdge::right;
      } else if (tok[0] == "bottom") {
        c.edge = DomainEdge::bottom;
      } else if (tok[0] == "top") {
        c.edge = DomainEdge::top;
      } else {
        throw std::invalid_argument("config: unknown clamp edge '" + tok[0] +
                                    "'");
      }
      if (tok.size() == 2) {
        if (tok[1] == "x") {
          c.fix_y = false;
        } else if (tok[1] == "y") {
          c.fix_x = false;
        } else if (tok[1] != "xy") {
          throw std::invalid_argument("config: clamp DOFs must be xy, x or y");
        }
      }
      cfg.custom.clamps.push_back(c);
    } else if (key == "void_circle") {
      const auto tok = split_ws(value);
      if (tok.size() != 3) {
        throw std::invalid_argument("config: void_circle needs '<cx> <cy> <r>'");
      }
      cfg.custom.void_circles.push_back({parse_double(tok[0], "cx"),
                                         parse_double(tok[1], "cy"),
                                         parse_double(tok[2], "r")});
    } else if (key == "solid_box") {
      const auto tok = split_ws(value);
      if (tok.size() != 4) {
        throw std::invalid_argument(
            "config: solid_box needs '<x0> <y0> <x1> <y1>'");
      }
      cfg.custom.solid_boxes.push_back(
          {parse_double(tok[0], "x0"), parse_double(tok[1], "y0"),
           parse_double(tok[2], "x1"), parse_double(tok[3], "y1")});
    } else {
      throw std::invalid_argument("config: unknown key '" + key + "'");
    }
  }
}

std::vector<std::string> validate(const RunConfig& cfg) {
  std::vector<std::string> errors;
  try {
    parse_problem_kind(cfg.problem);
  } catch (const std::exception&) {
    errors.push_back("problem must be one of mbb, multiload2, multiload4, "
                     "passive, custom");
  }
  if (cfg.hnex < 1) errors.push_back("hnex must be at least 1");
  if (cfg.hney < 1) errors.push_back("hney must be at least 1");
  if (!(cfg.rfill > 0.0)) errors.push_back("rfill must be positive");
  if (!(cfg.volfrac > 0.0 && cfg.volfrac < 1.0)) {
    errors.push_back("volfrac must lie in (0, 1)");
  }
  if (!(cfg.penal >= 1.0)) errors.push_back("penal must be at least 1");
  if (cfg.ft != 0 && cfg.ft != 1 && cfg.ft != 2) {
    errors.push_back("ft must be 0, 1 or 2");
  }
  if (!(cfg.nu >= 0.0 && cfg.nu < 0.5)) {
    errors.push_back("nu must lie in [0, 0.5)");
  }
  if (!(cfg.move > 0.0)) errors.push_back("move must be positive");
  if (cfg.maxiter < 1) errors.push_back("maxiter must be at least 1");
  if (!(cfg.change_tol > 0.0)) errors.push_back("change_tol must be positive");
  return errors;
}

RunResult execute(const RunConfig& cfg, std::ostream* log) {
  RunResult result;
  result.mesh = build_mesh({cfg.hnex, cfg.hney});

  switch (parse_problem_kind(cfg.problem)) {
    case ProblemKind::mbb:
      result.problem = mbb(result.mesh);
      break;
    case ProblemKind::multiload2:
      result.problem = multiload(result.mesh, 2);
      break;
    case ProblemKind::multiload4:
      result.problem = multiload(result.mesh, 4);
      break;
    case ProblemKind::passive:
      result.problem = passive_problem(result.mesh);
      break;
    case ProblemKind::custom:
      result.problem = custom_problem(result.mesh, cfg.custom);
      break;
  }

  const MaterialModel material{1.0, 1e-9, cfg.penal};
  const ElementStiffness ke = wachspress_k0(cfg.nu);
  const FilterOperator filter = build_filter(
      result.mesh.centroids, cfg.rfill, static_cast<FilterMode>(cfg.ft));

  OptimizerOptions opts;
  opts.volfrac = cfg.volfrac;
  opts.ft = static_cast<FilterMode>(cfg.ft);
  opts.move = cfg.move;
  opts.maxiter = cfg.maxiter;
  opts.change_tol = cfg.change_tol;

  result.state = run(result.mesh, ke, material, result.problem.loads,
                     result.problem.mask, filter, opts, log);
  return result;
}

}  // namespace topohex
