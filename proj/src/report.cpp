#include "planted/report.hpp"

#include "planted/canonical.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <iomanip>
#include <sstream>
#include <stdexcept>

namespace planted {

Json real_json(long double x) {
  if (std::isfinite(x)) return static_cast<double>(x);
  return real_text(x);
}

std::string real_text(long double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return format_double(static_cast<double>(x));
}

namespace {

std::string edge_text(const std::vector<Edge>& edges) {
  std::string out;
  for (const auto& [a, b] : edges) {
    if (!out.empty()) out += ' ';
    out += std::to_string(a) + '-' + std::to_string(b);
  }
  return out;
}

Json form_json(const CanonicalForm& f) {
  Json j;
  j["vertices"] = f.vertex_count;
  j["edges"] = f.edge_count();
  j["automorphisms"] = f.automorphism_order.str();
  j["edge_list"] = edge_text(f.edges);
  return j;
}

// CSV cells never contain commas here; quote anyway if one slips in.
std::string cell(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

}  // namespace

Json graph_json(const Graph& g) {
  Json j;
  j["vertices"] = g.vertex_count();
  j["edges"] = g.edge_count();
  j["edge_list"] = edge_text(g.edges());
  return j;
}

Json thresholds_json(const Graph& h, const ThresholdCurve& curve) {
  Json j;
  j["pattern"] = graph_json(h);
  j["n"] = curve.n.str();
  j["log_p1m"] = real_json(curve.log_p1m_h);
  j["p1m"] = real_json(std::exp(curve.log_p1m_h));
  if (curve.log_p_e) {
    j["log_p_e"] = real_json(*curve.log_p_e);
    j["p_e"] = real_json(std::exp(*curve.log_p_e));
  } else {
    j["log_p_e"] = nullptr;
    j["p_e"] = nullptr;
  }
  j["psi_error"] = curve.psi_error.empty() ? Json(nullptr) : Json(curve.psi_error);
  Json points = Json::array();
  for (const CurvePoint& pt : curve.points) {
    Json p;
    p["q"] = format_rational(pt.q);
    p["min_edges"] = pt.alpha.min_edges;
    if (pt.psi) {
      p["psi"] = real_json(pt.psi->psi);
      p["log_psi"] = real_json(pt.psi->log_psi);
      p["lambda"] = real_json(-pt.psi->log_psi);
      p["witness"] = form_json(pt.psi->witness);
    } else {
      p["psi"] = nullptr;
      p["log_psi"] = nullptr;
      p["lambda"] = nullptr;
      p["witness"] = nullptr;
    }
    p["alpha"] = format_rational(pt.alpha.alpha);
    Json w = Json::array();
    for (Vertex v : pt.alpha.witness) w.push_back(v);
    p["alpha_witness"] = w;
    p["log_surrogate"] = real_json(pt.log_surrogate);
    points.push_back(p);
  }
  j["points"] = points;
  return j;
}

std::string thresholds_csv(const ThresholdCurve& curve) {
  std::ostringstream out;
  out << "q,min_edges,psi,log_psi,lambda,witness_vertices,witness_edges,witness,alpha,alpha_float,log_surrogate\n";
  for (const CurvePoint& pt : curve.points) {
    out << format_rational(pt.q) << ',' << pt.alpha.min_edges << ',';
    if (pt.psi) {
      out << real_text(pt.psi->psi) << ',' << real_text(pt.psi->log_psi) << ',' << real_text(-pt.psi->log_psi) << ','
          << pt.psi->witness.vertex_count << ',' << pt.psi->witness.edge_count() << ','
          << cell(edge_text(pt.psi->witness.edges));
    } else {
      out << ",,,,,";
    }
    out << ',' << format_rational(pt.alpha.alpha) << ',' << real_text(to_long_double(pt.alpha.alpha)) << ','
        << real_text(pt.log_surrogate) << '\n';
  }
  return out.str();
}

Json classify_json(const Graph& h, const ClassificationReport& report) {
  Json j;
  j["pattern"] = graph_json(h);
  j["n"] = report.n.str();
  j["log_p1m"] = real_json(report.log_p1m);
  j["p1m"] = real_json(std::exp(report.log_p1m));
  Json conds = Json::array();
  for (const ConditionEntry& c : report.conditions) {
    Json e;
    e["name"] = c.name;
    e["operation"] = c.operation;
    e["holds"] = c.holds ? Json(*c.holds) : Json(nullptr);
    e["numeric_gap"] = c.gap ? real_json(*c.gap) : Json(nullptr);
    e["certificate"] = c.certificate;
    conds.push_back(e);
  }
  j["conditions"] = conds;
  Json v;
  v["regime"] = to_string(report.verdict.regime);
  v["route"] = report.verdict.route;
  v["predicted_threshold"] =
      report.verdict.predicted_threshold ? real_json(*report.verdict.predicted_threshold) : Json(nullptr);
  v["log_predicted_threshold"] =
      report.verdict.log_predicted_threshold ? real_json(*report.verdict.log_predicted_threshold) : Json(nullptr);
  v["failing_conditions"] = report.verdict.failing_conditions;
  j["verdict"] = v;
  j["notes"] = report.notes;
  return j;
}

std::string classify_table(const ClassificationReport& report) {
  std::ostringstream out;
  out << std::left << std::setw(22) << "condition" << std::setw(8) << "holds" << std::setw(24) << "gap"
      << "certificate\n";
  for (const ConditionEntry& c : report.conditions) {
    const std::string holds = c.holds ? (*c.holds ? "yes" : "no") : "-";
    out << std::setw(22) << c.name << std::setw(8) << holds << std::setw(24) << (c.gap ? real_text(*c.gap) : "-")
        << c.certificate << '\n';
  }
  out << "\nverdict: " << to_string(report.verdict.regime) << " (route " << report.verdict.route << ")";
  if (report.verdict.predicted_threshold) out << " at p = " << real_text(*report.verdict.predicted_threshold);
  out << '\n';
  if (!report.verdict.failing_conditions.empty()) {
    out << "failing:";
    for (const auto& f : report.verdict.failing_conditions) out << ' ' << f;
    out << '\n';
  }
  return out.str();
}

std::string overlap_csv(const OverlapDistribution& dist) {
  std::ostringstream out;
  out << "l,probability,probability_float,growth_functional,weak_growth_functional\n";
  const bool weak = log_big(dist.copies) > 0;
  for (int ell : dist.support()) {
    const Rational p = dist.at(ell);
    out << ell << ',' << format_rational(p) << ',' << real_text(to_long_double(p)) << ','
        << real_text(growth_functional(dist, ell)) << ','
        << (weak ? real_text(weak_growth_functional(dist, ell)) : std::string("nan")) << '\n';
  }
  return out.str();
}

Json overlap_json(const OverlapDistribution& dist) {
  Json j;
  j["n"] = dist.n.str();
  j["edges"] = dist.edges;
  j["copies"] = dist.copies.str();
  j["method"] = dist.method;
  Json rows = Json::array();
  for (int ell : dist.support()) {
    Json r;
    r["l"] = ell;
    r["probability"] = format_rational(dist.at(ell));
    r["probability_float"] = real_json(to_long_double(dist.at(ell)));
    r["growth_functional"] = real_json(growth_functional(dist, ell));
    rows.push_back(r);
  }
  j["support"] = rows;
  return j;
}

Json moments_json(const MomentReport& report) {
  auto terms = [](const TruncatedSum& s) {
    Json a = Json::array();
    for (const auto& [ell, t] : s.terms) {
      Json e;
      e["l"] = ell;
      e["term"] = real_json(t);
      a.push_back(e);
    }
    return a;
  };
  Json j;
  j["p"] = real_json(report.p);
  j["delta"] = format_rational(report.delta);
  j["first_moment_sum"] = real_json(report.first.sum);
  j["second_moment_sum"] = real_json(report.second.sum);
  j["first_moment_terms"] = terms(report.first);
  j["second_moment_terms"] = terms(report.second);
  return j;
}

std::string curve_csv(const std::vector<MmseCurvePoint>& curve) {
  std::ostringstream out;
  out << "p,mmse_mean,mmse_norm,stderr,D,I,trials\n";
  for (const MmseCurvePoint& pt : curve) {
    out << real_text(pt.p) << ',' << real_text(pt.estimate.mean) << ',' << real_text(pt.normalized) << ','
        << real_text(pt.estimate.stderr_) << ',' << real_text(pt.d.mean) << ',' << real_text(pt.i.mean) << ','
        << pt.estimate.trials << '\n';
  }
  return out.str();
}

std::string curve_svg(const std::vector<MmseCurvePoint>& curve, const std::vector<Overlay>& overlays,
                      const std::string& title) {
  const double width = 640;
  const double height = 400;
  const double left = 60;
  const double right = 20;
  const double top = 40;
  const double bottom = 50;
  const double pw = width - left - right;
  const double ph = height - top - bottom;
  auto fmt = [](double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return std::string(buf);
  };
  auto x_of = [&](double p) { return left + std::clamp(p, 0.0, 1.0) * pw; };
  auto y_of = [&](double m) { return top + (1 - std::clamp(m, 0.0, 1.0)) * ph; };

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
      << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<text x=\"" << fmt(width / 2) << "\" y=\"24\" text-anchor=\"middle\">" << title << "</text>\n";
  out << "<rect x=\"" << fmt(left) << "\" y=\"" << fmt(top) << "\" width=\"" << fmt(pw) << "\" height=\"" << fmt(ph)
      << "\" fill=\"none\" stroke=\"black\"/>\n";
  for (int i = 0; i <= 4; ++i) {
    const double t = i / 4.0;
    out << "<text x=\"" << fmt(x_of(t)) << "\" y=\"" << fmt(top + ph + 18) << "\" text-anchor=\"middle\">"
        << fmt(t) << "</text>\n";
    out << "<text x=\"" << fmt(left - 8) << "\" y=\"" << fmt(y_of(t) + 4) << "\" text-anchor=\"end\">" << fmt(t)
        << "</text>\n";
  }
  out << "<text x=\"" << fmt(left + pw / 2) << "\" y=\"" << fmt(height - 10) << "\" text-anchor=\"middle\">p</text>\n";
  out << "<text x=\"16\" y=\"" << fmt(top + ph / 2) << "\" transform=\"rotate(-90 16 " << fmt(top + ph / 2)
      << ")\" text-anchor=\"middle\">MMSE / e(H)</text>\n";
  for (const Overlay& o : overlays) {
    if (!(o.p >= 0 && o.p <= 1)) continue;
    const double x = x_of(static_cast<double>(o.p));
    out << "<line x1=\"" << fmt(x) << "\" y1=\"" << fmt(top) << "\" x2=\"" << fmt(x) << "\" y2=\"" << fmt(top + ph)
        << "\" stroke=\"gray\" stroke-dasharray=\"4 3\"/>\n";
    out << "<text x=\"" << fmt(x + 4) << "\" y=\"" << fmt(top + 14) << "\" fill=\"gray\">" << o.label << "</text>\n";
  }
  out << "<polyline fill=\"none\" stroke=\"steelblue\" stroke-width=\"2\" points=\"";
  for (std::size_t i = 0; i < curve.size(); ++i) {
    out << (i ? " " : "") << fmt(x_of(static_cast<double>(curve[i].p))) << ','
        << fmt(y_of(static_cast<double>(curve[i].normalized)));
  }
  out << "\"/>\n";
  for (const MmseCurvePoint& pt : curve) {
    const double x = x_of(static_cast<double>(pt.p));
    const double lo = static_cast<double>(pt.normalized - 3 * pt.normalized_stderr);
    const double hi = static_cast<double>(pt.normalized + 3 * pt.normalized_stderr);
    out << "<line x1=\"" << fmt(x) << "\" y1=\"" << fmt(y_of(lo)) << "\" x2=\"" << fmt(x) << "\" y2=\"" << fmt(y_of(hi))
        << "\" stroke=\"steelblue\"/>\n";
    out << "<circle cx=\"" << fmt(x) << "\" cy=\"" << fmt(y_of(static_cast<double>(pt.normalized)))
        << "\" r=\"3\" fill=\"steelblue\"/>\n";
  }
  out << "</svg>\n";
  return out.str();
}

std::string git_blob_sha1(std::string_view content) {
  const std::string header = "blob " + std::to_string(content.size()) + std::string(1, '\0');
  EVP_MD_CTX* ctx = EVP_MD_CTX_new();
  if (!ctx) throw std::runtime_error("EVP_MD_CTX_new failed");
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  const bool ok = EVP_DigestInit_ex(ctx, EVP_sha1(), nullptr) == 1 &&
                  EVP_DigestUpdate(ctx, header.data(), header.size()) == 1 &&
                  EVP_DigestUpdate(ctx, content.data(), content.size()) == 1 &&
                  EVP_DigestFinal_ex(ctx, digest, &len) == 1;
  EVP_MD_CTX_free(ctx);
  if (!ok) throw std::runtime_error("SHA-1 digest failed");
  std::ostringstream out;
  out << std::hex << std::setfill('0');
  for (unsigned int i = 0; i < len; ++i) out << std::setw(2) << static_cast<int>(digest[i]);
  return out.str();
}

}  // namespace planted
