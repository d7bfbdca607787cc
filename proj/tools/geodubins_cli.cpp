#include <CLI11.hpp>

#include <cmath>
#include <cstdint>
#include <iostream>
#include <random>
#include <string>

#include "geodubins/classifier.hpp"
#include "geodubins/dubins.hpp"
#include "geodubins/errors.hpp"
#include "geodubins/family.hpp"
#include "geodubins/index.hpp"
#include "geodubins/io.hpp"
#include "geodubins/shortening.hpp"

using namespace geodubins;

namespace {

void emit(const Json& j) { std::cout << dump_canonical(j); }

void save_curve(const std::string& path, const Curve& c, double rho0, const Json& metadata) {
  if (path.empty()) return;
  write_text_file(path, encode_curve({rho0, c, metadata}));
}

void require_rho0(double rho0) {
  if (!(rho0 > 0 && rho0 < kPi / 2)) fail(ErrorKind::InvalidInput, "--rho0 must lie in (0, pi/2)");
}

int exit_code(ErrorKind k) {
  switch (k) {
    case ErrorKind::InvalidInput:
    case ErrorKind::Parse: return 2;
    default: return 3;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Curvature-constrained curves on the unit sphere"};
  app.require_subcommand(1);
  app.fallthrough();
  std::uint64_t seed = 1;
  app.add_option("--seed", seed, "Seed for randomized commands");

  double rho0 = 0.2, epsilon = 0.0, r0 = 1.0;
  std::string q_text, out, in, spec_path, x_text, trace_path;
  int passes = 10000, n_samples = 100, grid = 0;

  auto* plan = app.add_subcommand("plan", "Shortest CSC/CCC path from the identity frame to Q");
  plan->add_option("--rho0", rho0)->required();
  plan->add_option("--q", q_text, "9 reals row-major or axis-angle:ax,ay,az,angle")->required();
  plan->add_option("--out", out, "Curve document path");

  auto* index = app.add_subcommand("index", "Endpoint distances, truncated lengths and n_Q");
  index->add_option("--rho0", rho0)->required();
  index->add_option("--q", q_text)->required();

  auto* critical = app.add_subcommand("critical", "Generate and validate a critical curve");
  critical->add_option("--spec", spec_path, "JSON: rho0, radii, leading_sign, first_sweep, last_sweep")->required();
  critical->add_option("--out", out);

  auto* shorten_cmd = app.add_subcommand("shorten", "Curvature-constrained curve shortening");
  shorten_cmd->add_option("--in", in)->required();
  shorten_cmd->add_option("--rho0", rho0)->required();
  shorten_cmd->add_option("--passes", passes)->check(CLI::PositiveNumber);
  shorten_cmd->add_option("--out", out);
  shorten_cmd->add_option("--trace", trace_path, "CSV of the length trace");

  auto* classify = app.add_subcommand("classify", "Band sequence, epsilon-index and G-coordinates");
  classify->add_option("--in", in)->required();
  classify->add_option("--q", q_text)->required();
  classify->add_option("--rho0", rho0)->required();
  classify->add_option("--epsilon", epsilon)->required();
  classify->add_option("--r0", r0, "Ball radius for the G map");

  auto* family = app.add_subcommand("family", "Members of the control-circle family");
  family->add_option("--q", q_text)->required();
  family->add_option("--rho0", rho0)->required();
  auto* x_opt = family->add_option("--x", x_text, "Comma-separated parameters, one per pair");
  auto* grid_opt = family->add_option("--grid", grid, "Number of random parameter points in [-1, 1]^n")->check(CLI::PositiveNumber);
  x_opt->excludes(grid_opt);
  family->add_option("--epsilon", epsilon, "Classification epsilon for --grid (default rho0/16)");
  family->add_option("--out", out);

  auto* sample = app.add_subcommand("sample", "Uniform samples as CSV t,x,y,z,tx,ty,tz");
  sample->add_option("--in", in)->required();
  sample->add_option("--n", n_samples)->check(CLI::Range(2, 100000000));
  sample->add_option("--out", out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*plan) {
      require_rho0(rho0);
      const Mat3 Q = parse_rotation(q_text);
      const PathSolution p = shortest_path(Mat3::Identity(), Q, rho0);
      Json meta = path_metadata(p);
      save_curve(out, p.curve(), rho0, meta);
      meta["rho0"] = rho0;
      meta["end_frame_error"] = frame_distance(p.curve().end_frame(), Q);
      emit(meta);
    } else if (*index) {
      require_rho0(rho0);
      emit(index_to_json(index_report(parse_rotation(q_text), rho0)));
    } else if (*critical) {
      Json spec_json;
      try {
        spec_json = Json::parse(read_text_file(spec_path));
      } catch (const Json::parse_error& e) {
        fail(ErrorKind::Parse, std::string("$: malformed JSON: ") + e.what());
      }
      const CriticalSpec spec = critical_spec_from_json(spec_json);
      const Curve c = generate_critical(spec);
      const CriticalValidation v = validate_critical(c, spec);
      Json meta{{"sign_string", spec.sign_string()},
                {"length", c.length()},
                {"valid", v.valid()},
                {"radii_ok", v.radii_ok},
                {"sweeps_ok", v.sweeps_ok},
                {"alternating", v.alternating},
                {"centers_cocircular", v.centers_cocircular},
                {"cocircular_error", v.cocircular_error},
                {"simple", v.simple}};
      save_curve(out, c, spec.rho0, meta);
      emit(meta);
    } else if (*shorten_cmd) {
      require_rho0(rho0);
      const CurveDocument doc = decode_curve(read_text_file(in));
      ShorteningSchedule sched;
      sched.max_passes = passes;
      const ShorteningResult r = shorten(doc.curve, rho0, sched);
      Json meta{{"initial_length", doc.curve.length()},
                {"final_length", r.curve.length()},
                {"passes", r.passes},
                {"stalled", r.stalled},
                {"end_frame_error", frame_distance(r.curve.end_frame(), doc.curve.end_frame())},
                {"segments", segments_to_json(classify_segments(r.curve, rho0, 1e-3))}};
      save_curve(out, r.curve, rho0, {{"passes", r.passes}});
      if (!trace_path.empty()) write_text_file(trace_path, trace_csv(r.trace));
      emit(meta);
    } else if (*classify) {
      require_rho0(rho0);
      const Mat3 Q = parse_rotation(q_text);
      const CurveDocument doc = decode_curve(read_text_file(in));
      const ExtractionResult e = classify_curve(doc.curve, Q, rho0, epsilon);
      Json j = extraction_to_json(e);
      const IndexReport rep = index_report(Q, rho0);
      j["n_Q"] = rep.n_Q ? Json(*rep.n_Q) : Json(nullptr);
      if (rep.n_Q && *rep.n_Q >= 1) j["G"] = gmap_to_json(g_map(e, *rep.n_Q, r0));
      emit(j);
    } else if (*family) {
      require_rho0(rho0);
      const ControlTrajectories traj(make_family_params(parse_rotation(q_text), rho0));
      const int n = traj.pairs();
      Json head{{"n_Q", n}, {"rho_tilde", traj.rho()}, {"delta0", traj.params().delta0}};
      if (grid > 0) {
        const double eps = epsilon > 0 ? epsilon : rho0 / 16;
        std::mt19937_64 rng(seed);
        std::uniform_real_distribution<double> u(-1.0, 1.0);
        std::vector<std::vector<double>> xs(grid, std::vector<double>(n));
        for (auto& x : xs)
          for (double& v : x) v = u(rng);
        const auto curves = f_bar_grid(traj, xs);
        const auto results = classify_corpus(curves, traj.params().Q, rho0, eps);
        Json pts = Json::array();
        for (std::size_t k = 0; k < xs.size(); ++k)
          pts.push_back({{"x", xs[k]},
                         {"length", curves[k].length()},
                         {"in_c0", results[k].in_c0},
                         {"index", results[k].in_c0 ? Json(epsilon_index(results[k].x)) : Json(nullptr)}});
        head["epsilon"] = eps;
        head["points"] = pts;
      } else {
        std::vector<double> x;
        if (!x_text.empty()) x = parse_real_list(x_text);
        const Curve c = f_bar(traj, x);
        head["x"] = x;
        head["length"] = c.length();
        head["end_frame_error"] = frame_distance(c.end_frame(), traj.params().Q);
        save_curve(out, c, rho0, {{"x", x}, {"rho_tilde", traj.rho()}});
      }
      emit(head);
    } else if (*sample) {
      const CurveDocument doc = decode_curve(read_text_file(in));
      const std::string csv = samples_csv(sample_uniform(doc.curve, std::size_t(n_samples)));
      if (out.empty())
        std::cout << csv;
      else
        write_text_file(out, csv);
    }
  } catch (const Error& e) {
    std::cerr << dump_canonical(Json{{"error", kind_name(e.kind())}, {"message", e.what()}});
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    std::cerr << dump_canonical(Json{{"error", "internal"}, {"message", e.what()}});
    return 3;
  }
  return 0;
}
