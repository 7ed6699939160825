#pragma once

/*
 * Job documents: one JSON object per computation, dispatched to the engines.
 *
 *   { "command": "...", "payload": {...},
 *     "options": { "trunc": 16, "field": "q", "format": "text",
 *                  "cap_degree": 20, "timestamps": false } }
 *
 * Outputs are deterministic byte-for-byte; timestamps are opt-in.  Exit
 * codes: 0 success, 1 validation/hypothesis failure, 2 verification
 * failure, 3 unsupported expression, 4 resource cap.
 */

#include <ctime>

#include "loopspace/decomposition.hpp"
#include "loopspace/splitting.hpp"
#include "loopspace/verify.hpp"

namespace loopspace {

struct JobOptions {
  int trunc = 16;
  CoefficientRing field = CoefficientRing::rationals();
  std::string format = "text";
  int cap_degree = -1;  // when >= 1, overrides the quotient degree caps
  bool timestamps = false;
};

struct JobResult {
  int exit_code = 0;
  std::string output;
  std::string error;
};

namespace detail {

inline JobOptions parse_job_options(const json& j) {
  JobOptions opts;
  if (j.is_null()) return opts;
  if (!j.is_object())
    throw validation_error("job options must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (key == "trunc") {
      opts.trunc = value.get<int>();
      if (opts.trunc < 1)
        throw validation_error("job options: trunc must be >= 1");
      if (opts.trunc > 4096)
        throw resource_error("job options: trunc above 4096 exceeds the "
                             "resource budget");
    } else if (key == "field") {
      opts.field = CoefficientRing::parse(value.get<std::string>());
    } else if (key == "format") {
      opts.format = value.get<std::string>();
      if (opts.format != "text" && opts.format != "json" &&
          opts.format != "csv")
        throw validation_error(
            "job options: format must be text, json, or csv");
    } else if (key == "cap_degree") {
      opts.cap_degree = value.get<int>();
      if (opts.cap_degree < 1)
        throw validation_error("job options: cap_degree must be >= 1");
    } else if (key == "timestamps") {
      opts.timestamps = value.get<bool>();
    } else {
      throw validation_error("job options: unknown key \"" + key + "\"");
    }
  }
  return opts;
}

inline QuotientCaps caps_from_options(const JobOptions& opts) {
  QuotientCaps caps;
  if (opts.cap_degree >= 1) {
    caps.degree_cap_two = opts.cap_degree;
    caps.degree_cap_many = opts.cap_degree;
  }
  return caps;
}

inline std::string iso_utc_now() {
  std::time_t t = std::time(nullptr);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
  return buf;
}

inline SpaceExpr payload_space(const json& payload) {
  if (payload.is_object() && payload.contains("space"))
    return space_from_json(payload.at("space"));
  return space_from_json(payload);
}

inline long long payload_k(const json& payload) {
  if (payload.is_number_integer()) return payload.get<long long>();
  if (payload.is_object() && payload.contains("k"))
    return payload.at("k").get<long long>();
  throw validation_error(
      "payload must be an integer k or an object with a \"k\" field");
}

inline std::string csv_of_series(const PowerSeries& s) {
  std::string out = "degree,coefficient\n";
  for (int d = 0; d <= s.trunc; ++d)
    out += std::to_string(d) + "," + s.c[d].str() + "\n";
  return out;
}

inline std::string csv_of_group(const GradedGroup& g) {
  std::string out = "degree,free_rank,torsion\n";
  for (int d = 0; d <= g.trunc; ++d) {
    std::string torsion;
    for (const auto& pp : g.torsion_at(d)) {
      if (!torsion.empty()) torsion += ";";
      torsion += std::to_string(pp.value());
    }
    out += std::to_string(d) + "," + std::to_string(g.free_rank(d)) + "," +
           torsion + "\n";
  }
  return out;
}

inline std::string hypothesis_lines(const std::vector<std::string>& hs) {
  std::string out = "hypotheses:\n";
  for (const auto& h : hs) out += "  - " + h + "\n";
  return out;
}

}  // namespace detail

inline JobResult run_job(const json& doc) {
  try {
    if (!doc.is_object())
      throw validation_error("job document must be a JSON object");
    if (!doc.contains("command") || !doc.at("command").is_string())
      throw validation_error("job document needs a \"command\" string");
    std::string command = doc.at("command").get<std::string>();
    JobOptions opts = detail::parse_job_options(
        doc.contains("options") ? doc.at("options") : json());
    json payload = doc.contains("payload") ? doc.at("payload") : json();

    json report;                      // json-format body
    std::string text;                 // text-format body
    std::string csv;                  // csv-format body when available
    std::vector<std::string> envelope_hypotheses;

    if (command == "homology") {
      SpaceExpr e = detail::payload_space(payload);
      GradedGroup g = homology(e, opts.field, opts.trunc);
      report = to_json(g);
      envelope_hypotheses = {
          "expression evaluated by structural rules (Kunneth with Tor, "
          "Bott-Samelson, co-H splittings)"};
      text = "homology of " + to_text(e) + " over " + opts.field.pretty() +
             ", degrees 0.." + std::to_string(opts.trunc) + "\n" +
             to_text(g) + "\n" +
             detail::hypothesis_lines(envelope_hypotheses);
      csv = detail::csv_of_group(g);
    } else if (command == "series") {
      SpaceExpr e = detail::payload_space(payload);
      PowerSeries s = reduced_poincare_series(e, opts.field, opts.trunc);
      report = to_json(s);
      envelope_hypotheses = {
          "reduced Poincare series over a field from the homology evaluator"};
      text = "reduced Poincare series of " + to_text(e) + " over " +
             opts.field.pretty() + ", degrees 0.." +
             std::to_string(opts.trunc) + "\n" + to_text(s) + "\n" +
             detail::hypothesis_lines(envelope_hypotheses);
      csv = detail::csv_of_series(s);
    } else if (command == "loop-series") {
      SpaceExpr e = detail::payload_space(payload);
      PowerSeries s = loop_series(e, opts.field, opts.trunc);
      report = to_json(s);
      envelope_hypotheses = {
          "loop space series by structural rules: spheres, products, and "
          "tensor algebras on desuspended co-H wedges"};
      text = "loop space Poincare series of " + to_text(e) + " over " +
             opts.field.pretty() + ", degrees 0.." +
             std::to_string(opts.trunc) + "\n" + to_text(s) + "\n" +
             detail::hypothesis_lines(envelope_hypotheses);
      csv = detail::csv_of_series(s);
    } else if (command == "decompose") {
      CappedComplexSpec spec = capped_from_json(payload);
      DecompositionReport r = decompose_capped(spec);
      report = to_json(r);
      text = to_text(r);
    } else if (command == "loop-homology") {
      CappedComplexSpec spec = capped_from_json(payload);
      LoopHomologyPresentation lh =
          loop_homology_presentation(spec, opts.field, opts.trunc);
      report = to_json(lh.presentation);
      report["hypotheses_used"] =
          detail::strings_to_json(lh.hypotheses_used);
      text = "loop homology presentation over " + opts.field.pretty() +
             ", generators collected through degree " +
             std::to_string(opts.trunc) + "\n";
      text += "generators:\n";
      for (const auto& g : lh.presentation.generators)
        text += "  " + g.name + " (degree " + std::to_string(g.degree) +
                ")\n";
      text += "relations:\n";
      for (const auto& rel : lh.presentation.relations)
        text += "  " + to_text(rel, lh.presentation) + "\n";
      text += detail::hypothesis_lines(lh.hypotheses_used);
    } else if (command == "inertness") {
      InertnessVerdict v = inertness_verdict(detail::payload_k(payload));
      report = to_json(v);
      envelope_hypotheses = {
          "verdict transcribes the capped-complex inertness criterion for "
          "the given k"};
      text = to_text(v);
    } else if (command == "hyperbolicity") {
      HyperbolicityVerdict v =
          hyperbolicity_verdict(detail::payload_k(payload));
      report = to_json(v);
      envelope_hypotheses = {
          "verdict transcribes the capped-complex hyperbolicity case table "
          "for the given k"};
      text = to_text(v);
    } else if (command == "check-pair") {
      CohomologyRingInput ring = ring_from_json(payload);
      PairReport r = check_spherical_pair(ring);
      report = to_json(r);
      text = to_text(r);
    } else if (command == "skeleton") {
      HomologyDataInput hd = homology_data_from_json(payload);
      SkeletonReport r = skeleton_from_homology(hd);
      report = to_json(r);
      text = to_text(r);
    } else if (command == "split") {
      SpaceExpr a = SpaceExpr::point();
      int m = 0, nm = 0;
      if (payload.is_object() && payload.contains("space")) {
        a = space_from_json(payload.at("space"));
        if (!payload.contains("m") || !payload.contains("nm"))
          throw validation_error(
              "split payload with \"space\" also needs \"m\" and \"nm\"");
        m = payload.at("m").get<int>();
        nm = payload.at("nm").get<int>();
      } else {
        CappedComplexSpec spec = capped_from_json(payload);
        a = normalize(SpaceExpr::wedge(
            {SpaceExpr::moore(spec.n, spec.k), spec.c}));
        m = spec.m;
        nm = spec.n - spec.m;
      }
      SummandTable table = james_split_half_smash(a, m, nm, opts.trunc);
      report = to_json(table);
      envelope_hypotheses = {
          "A normalizes to a wedge of spheres and Moore spaces",
          "loops on S^" + std::to_string(m) + " x S^" + std::to_string(nm) +
              " carry the monomial basis u^i v^j; each monomial of degree c "
              "contributes one suspended copy Sigma^c A"};
      text = "james splitting of " + to_text(a) + " |x Loop(S^" +
             std::to_string(m) + " x S^" + std::to_string(nm) +
             "), summands complete through degree " +
             std::to_string(opts.trunc) + "\n" + to_text(table) +
             detail::hypothesis_lines(envelope_hypotheses);
      csv = to_csv(table);
    } else if (command == "verify") {
      if (opts.format == "csv")
        throw validation_error("csv format is not available for verify");
      CappedComplexSpec spec = capped_from_json(payload);
      VerificationReport r = verify_decomposition_series(
          spec, opts.field, opts.trunc, detail::caps_from_options(opts));
      report = to_json(r);
      text = to_text(r);
      JobResult result;
      result.exit_code = r.status == "PASS" ? 0 : 2;
      if (opts.format == "json") {
        json envelope;
        envelope["command"] = command;
        envelope["trunc"] = opts.trunc;
        envelope["field"] = opts.field.token();
        if (opts.timestamps) envelope["generated_at"] = detail::iso_utc_now();
        envelope["report"] = report;
        result.output = envelope.dump(2) + "\n";
      } else {
        result.output = text + "-- trunc " + std::to_string(opts.trunc) +
                        ", field " + opts.field.token() + "\n";
        if (opts.timestamps)
          result.output += "generated at: " + detail::iso_utc_now() + "\n";
      }
      if (result.exit_code != 0)
        result.error = "error: verification failed at degree " +
                       std::to_string(r.first_mismatch_degree) + "\n";
      return result;
    } else {
      throw validation_error("unknown command \"" + command + "\"");
    }

    JobResult result;
    if (opts.format == "json") {
      json envelope;
      envelope["command"] = command;
      envelope["trunc"] = opts.trunc;
      envelope["field"] = opts.field.token();
      if (!envelope_hypotheses.empty())
        envelope["hypotheses_used"] =
            detail::strings_to_json(envelope_hypotheses);
      if (opts.timestamps) envelope["generated_at"] = detail::iso_utc_now();
      envelope["report"] = report;
      result.output = envelope.dump(2) + "\n";
    } else if (opts.format == "csv") {
      if (csv.empty())
        throw validation_error("csv format is not available for command \"" +
                               command + "\"");
      result.output = csv;
    } else {
      result.output = text + "-- trunc " + std::to_string(opts.trunc) +
                      ", field " + opts.field.token() + "\n";
      if (opts.timestamps)
        result.output += "generated at: " + detail::iso_utc_now() + "\n";
    }
    return result;
  } catch (const error& e) {
    return {e.exit_code(), "", std::string("error: ") + e.what() + "\n"};
  } catch (const json::exception& e) {
    return {1, "", std::string("error: job document: ") + e.what() + "\n"};
  }
}

inline JobResult run_batch(const json& docs) {
  if (!docs.is_array())
    return {1, "", "error: batch input must be a JSON array of jobs\n"};
  JobResult total;
  for (const auto& doc : docs) {
    JobResult one = run_job(doc);
    total.exit_code = std::max(total.exit_code, one.exit_code);
    total.output += one.output;
    total.error += one.error;
  }
  return total;
}

/* Parse a document (object = one job, array = batch) and run it. */
inline JobResult run_job_text(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    return {1, "", std::string("error: JSON parse failure: ") + e.what() +
                       "\n"};
  }
  if (doc.is_array()) return run_batch(doc);
  return run_job(doc);
}

}  // namespace loopspace
