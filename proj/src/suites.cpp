// Copyright 2026 The Thermoforge Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "thermoforge/suites.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <future>
#include <map>
#include <sstream>

#include "thermoforge/ensembles.hpp"
#include "thermoforge/errors.hpp"
#include "thermoforge/knn.hpp"
#include "thermoforge/linear_models.hpp"
#include "thermoforge/metrics.hpp"
#include "thermoforge/physics.hpp"
#include "thermoforge/svg.hpp"
#include "thermoforge/svm.hpp"
#include "thermoforge/tree.hpp"

namespace thermoforge::cli {

using nlohmann::json;

std::vector<std::string> regression_algorithms() {
  return {"svr",      "decision_tree", "random_forest", "second_order_boosting", "ordered_boosting",
          "adaboost", "extra_trees",   "gradient_boosting"};
}

std::vector<std::string> pinn_algorithms() {
  return {"pinn_transport", "pinn_wave", "pinn_heat", "pinn_schrodinger"};
}

std::vector<std::string> classification_algorithms() {
  return {"logistic_regression", "knn",      "svc",           "sgd_classifier",
          "decision_tree",       "random_forest", "adaboost", "gradient_boosting",
          "stochastic_gradient_boosting"};
}

OutputSink::OutputSink(std::filesystem::path dir) : dir_(std::move(dir)) {
  std::error_code ec;
  std::filesystem::create_directories(dir_, ec);
  if (ec) throw Error("cannot create output directory " + dir_.string() + ": " + ec.message());
}

void OutputSink::write(const std::string& name, const std::string& content) {
  svg::write_file(dir_ / name, content);
  files_.push_back(name);
}

void OutputSink::write_json(const std::string& name, const json& j) { write(name, j.dump(2) + "\n"); }

namespace {

const std::map<std::string, std::string>& labels() {
  static const std::map<std::string, std::string> m{
      {"svr", "Support Vector Regression"},
      {"decision_tree", "Decision Tree"},
      {"random_forest", "Random Forest"},
      {"second_order_boosting", "Second-Order Gradient Boosting"},
      {"ordered_boosting", "Ordered Boosting"},
      {"adaboost", "AdaBoost"},
      {"extra_trees", "Extra Trees"},
      {"gradient_boosting", "Gradient Boosting"},
      {"pinn_transport", "Transport Equation PINN"},
      {"pinn_wave", "Wave Equation PINN"},
      {"pinn_heat", "Heat Equation PINN"},
      {"pinn_schrodinger", "Schrodinger Equation PINN"},
      {"logistic_regression", "Logistic Regression"},
      {"knn", "K-Nearest Neighbours"},
      {"svc", "Support Vector Classifier"},
      {"sgd_classifier", "SGD Classifier"},
      {"stochastic_gradient_boosting", "Stochastic Gradient Boosting"},
  };
  return m;
}

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

double round4(double v) { return std::round(v * 1e4) / 1e4; }

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

struct Outcome {
  json row;
  std::vector<std::pair<std::string, std::string>> files;
};

using Task = std::function<Outcome()>;

std::vector<Outcome> execute(const std::vector<Task>& tasks, bool parallel) {
  std::vector<Outcome> out;
  if (!parallel) {
    for (const auto& t : tasks) out.push_back(t());
    return out;
  }
  std::vector<std::future<Outcome>> futures;
  futures.reserve(tasks.size());
  for (const auto& t : tasks) futures.push_back(std::async(std::launch::async, t));
  for (auto& f : futures) out.push_back(f.get());
  return out;
}

struct Loaded {
  data::Dataset ds;
  std::string label;  // path as written in the config
  std::string log;
};

Loaded load(const RunConfig& cfg, const std::string& suite_key, const std::string& suite_path) {
  const bool own = !suite_path.empty();
  const std::string path = own ? suite_path : cfg.data;
  if (path.empty()) {
    throw ConfigError("/" + suite_key + "/data", "no data file configured (set /data or /" + suite_key + "/data)");
  }
  Loaded l;
  l.label = own ? cfg.effective[suite_key]["data"].get<std::string>() : cfg.effective["data"].get<std::string>();
  data::IngestionLog log;
  l.ds = data::load_csv(path, data::CsvSchema::afsd(), log);
  l.log = log.str();
  return l;
}

json scaler_json(const data::ScalerParams& s) {
  return {{"columns", s.columns}, {"mean", to_json(s.mean)}, {"stddev", to_json(s.stddev)}};
}

json regression_json(const RegressionMetrics& m) {
  json j = {{"mse", m.mse}, {"mae", m.mae}, {"rmse", m.rmse}, {"r2", m.r2}, {"n", m.n}, {"r2_undefined", m.r2_undefined}};
  if (m.r2_undefined) j["r2"] = nullptr;
  return j;
}

json importance_json(const FittedModel& m) {
  if (m.trees().empty()) return nullptr;
  return to_json(feature_importance(m));
}

json report_header(const RunConfig& cfg, const char* suite, const Loaded& l, const data::Dataset& train,
                   const data::Dataset& test, const std::vector<std::string>& features) {
  return {{"schema_version", kReportSchemaVersion},
          {"suite", suite},
          {"fingerprint", cfg.fingerprint()},
          {"seed", cfg.seed},
          {"dataset",
           {{"path", l.label},
            {"n_rows", l.ds.rows()},
            {"n_train", train.rows()},
            {"n_test", test.rows()},
            {"train_fraction", cfg.split.train_fraction},
            {"features", features}}},
          {"config", cfg.effective},
          {"rows", json::array()}};
}

std::string csv_of(const data::Dataset& ds, const std::filesystem::path& tmp) {
  data::write_csv(tmp, ds);
  std::ifstream in(tmp, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  in.close();
  std::filesystem::remove(tmp);
  return ss.str();
}

void write_split(OutputSink& out, const std::string& suite, const data::Dataset& train, const data::Dataset& test) {
  const std::string tr = "split_" + suite + "_train.csv", te = "split_" + suite + "_test.csv";
  out.write(tr, csv_of(train, out.dir() / (tr + ".tmp")));
  out.write(te, csv_of(test, out.dir() / (te + ".tmp")));
}

std::unique_ptr<FittedModel> fit_regressor(const std::string& name, const RegressConfig& rc, const Eigen::MatrixXd& x,
                                           const Eigen::VectorXd& y) {
  if (name == "svr") return fit_svr(x, y, rc.svr);
  if (name == "decision_tree") {
    return fit_cart_regressor(x, y, rc.decision_tree.max_depth, rc.decision_tree.min_samples_leaf);
  }
  if (name == "random_forest") return fit_random_forest(x, y, rc.random_forest);
  if (name == "second_order_boosting") return fit_second_order_boosting(x, y, rc.second_order_boosting);
  if (name == "ordered_boosting") return fit_ordered_boosting(x, y, rc.ordered_boosting);
  if (name == "adaboost") return fit_adaboost(x, y, rc.adaboost);
  if (name == "extra_trees") return fit_extra_trees(x, y, rc.extra_trees);
  if (name == "gradient_boosting") return fit_gradient_boosting_regressor(x, y, rc.gradient_boosting);
  throw InvalidArgument("unknown regression algorithm '" + name + "'");
}

std::unique_ptr<FittedModel> fit_classifier(const std::string& name, const ClassifyConfig& cc,
                                            const Eigen::MatrixXd& x, const Eigen::VectorXi& y) {
  if (name == "logistic_regression") return fit_logistic(x, y, cc.logistic_regression);
  if (name == "knn") return fit_knn(x, y, cc.knn_k);
  if (name == "svc") return fit_svc(x, y, cc.svc);
  if (name == "sgd_classifier") return fit_sgd_classifier(x, y, cc.sgd_classifier);
  if (name == "decision_tree") {
    return fit_cart_classifier(x, y, cc.decision_tree.max_depth, cc.decision_tree.min_samples_leaf);
  }
  if (name == "random_forest") return fit_random_forest(x, y, cc.random_forest);
  if (name == "adaboost") return fit_adaboost(x, y, cc.adaboost);
  if (name == "gradient_boosting") return fit_gradient_boosting_classifier(x, y, cc.gradient_boosting);
  if (name == "stochastic_gradient_boosting") {
    return fit_gradient_boosting_classifier(x, y, cc.stochastic_gradient_boosting);
  }
  throw InvalidArgument("unknown classification algorithm '" + name + "'");
}

json model_file(const std::string& name, const char* suite, const std::string& algorithm,
                const std::vector<std::string>& features, const data::ScalerParams& scaler, const FittedModel& m) {
  return {{"format", "thermoforge-model/1"},
          {"name", name},
          {"suite", suite},
          {"algorithm", algorithm},
          {"features", features},
          {"scaler", scaler_json(scaler)},
          {"model", m.to_json()}};
}

std::vector<std::string> short_names(const std::vector<std::string>& features) {
  std::vector<std::string> out;
  for (const auto& f : features) {
    const auto p = f.find(" (");
    out.push_back(p == std::string::npos ? f : f.substr(0, p));
  }
  return out;
}

}  // namespace

json run_regression_suite(const RunConfig& cfg, OutputSink& out, const RunOptions& opt) {
  const RegressConfig& rc = cfg.regress;
  const Loaded l = load(cfg, "regress", rc.data);
  const auto [train, test] = data::train_test_split(l.ds, cfg.split);
  const data::ScalerParams scaler = data::fit_scaler(train.select(rc.features), rc.features);
  const Eigen::MatrixXd xtr = scaler.transform(train.select(rc.features));
  const Eigen::MatrixXd xte = scaler.transform(test.select(rc.features));
  const Eigen::VectorXd& ytr = train.temperature;
  const Eigen::VectorXd& yte = test.temperature;

  std::vector<Task> tasks;
  for (const std::string& algo : regression_algorithms()) {
    tasks.push_back([&, algo] {
      const std::string name = "regress_" + algo;
      const std::string& label = labels().at(algo);
      const auto t0 = std::chrono::steady_clock::now();
      const auto model = fit_regressor(algo, rc, xtr, ytr);
      const double secs = seconds_since(t0);
      const Eigen::VectorXd ptr = model->predict(xtr), pte = model->predict(xte);
      const RegressionMetrics mte = regression_metrics(yte, pte);
      Outcome o;
      o.row = {{"algorithm", algo},
               {"label", label},
               {"test", regression_json(mte)},
               {"train", regression_json(regression_metrics(ytr, ptr))},
               {"execution_seconds", round4(secs)},
               {"feature_importance", importance_json(*model)},
               {"model_file", "model_" + name + ".json"},
               {"notes", json::array()}};
      if (const auto* svm = dynamic_cast<const SvmModel*>(model.get())) {
        o.row["notes"] = svm->warnings();
        o.row["n_support"] = svm->n_support();
      }
      o.files.emplace_back("model_" + name + ".json", model_file(name, "regress", algo, rc.features, scaler, *model).dump(2) + "\n");
      o.files.emplace_back("plot_actual_vs_predicted_" + name + ".svg",
                           svg::actual_vs_predicted(yte, pte, label + ": actual vs predicted (test)"));
      const auto resid = residual_series(yte, pte);
      o.files.emplace_back("plot_residual_" + name + ".svg", svg::residual_plot(resid, label + ": residuals (test)"));
      if (yte.size() >= 3) {
        o.files.emplace_back("plot_qq_" + name + ".svg",
                             svg::qq_plot(qq_points(yte - pte), label + ": normal Q-Q of residuals (test)"));
      }
      if (!model->trees().empty()) {
        o.files.emplace_back("plot_feature_importance_bars_" + name + ".svg",
                             svg::feature_importance_bars(short_names(rc.features), feature_importance(*model),
                                                          label + ": feature importance"));
      }
      return o;
    });
  }
  const std::vector<Outcome> results = execute(tasks, opt.parallel);

  json report = report_header(cfg, "regress", l, train, test, rc.features);
  std::ostringstream csv;
  csv << "algorithm,mse,mae,rmse,r2,execution_seconds\n";
  for (const Outcome& o : results) {
    report["rows"].push_back(o.row);
    for (const auto& [name, content] : o.files) out.write(name, content);
    const json& t = o.row["test"];
    csv << o.row["algorithm"].get<std::string>() << ',' << num(t["mse"]) << ',' << num(t["mae"]) << ','
        << num(t["rmse"]) << ',' << (t["r2"].is_null() ? std::string("") : num(t["r2"])) << ','
        << num(o.row["execution_seconds"]) << '\n';
  }
  write_split(out, "regress", train, test);
  out.write("ingestion_regress.log", l.log);
  out.write_json("report_regress.json", report);
  out.write("report_regress.csv", csv.str());
  return report;
}

json run_pinn_suite(const RunConfig& cfg, OutputSink& out, const RunOptions& opt) {
  const PinnSuiteConfig& pc = cfg.pinn;
  const Loaded l = load(cfg, "pinn", pc.data);
  const auto [train, test] = data::train_test_split(l.ds, cfg.split);
  const std::vector<Equation> equations{Equation::kTransport, Equation::kWave, Equation::kHeat,
                                        Equation::kSchrodinger};

  std::vector<Task> tasks;
  for (Equation eq : equations) {
    tasks.push_back([&, eq] {
      const std::string algo = std::string("pinn_") + equation_name(eq);
      const std::string& label = labels().at(algo);
      PhysicsSpec spec = pc.physics;
      spec.equation = eq;
      const PinnResult res = train_pinn(train, test, spec, pc.train);
      const ResponseSurface surf = response_surface(res.net, res.scaling, pc.surface_grid);
      const PinnHistoryRow& first = res.history.front();
      const double smoothed = smoothed_final_loss(res.history, 10);
      Outcome o;
      o.row = {{"algorithm", algo},
               {"label", label},
               {"equation", equation_name(eq)},
               {"test", {{"rmse", res.test_rmse}, {"mae", res.test_mae}, {"n", test.rows()}}},
               {"initial_loss", {{"physics", first.physics}, {"data", first.data}, {"total", first.total}}},
               {"final_loss",
                {{"physics", res.final_loss.physics}, {"data", res.final_loss.data}, {"total", res.final_loss.total}}},
               {"smoothed_final_total", smoothed},
               {"loss_decreased", res.final_loss.total < first.total && smoothed < first.total},
               {"epochs", pc.train.epochs},
               {"surface_roughness", surf.roughness},
               {"execution_seconds", round4(res.seconds)},
               {"model_file", "model_" + algo + ".json"}};
      const PinnScaling& sc = res.scaling;
      json model = {{"format", "thermoforge-pinn/1"},
                    {"name", algo},
                    {"suite", "pinn"},
                    {"equation", equation_name(eq)},
                    {"physics",
                     {{"c", spec.c},
                      {"k", spec.k},
                      {"hbar", spec.hbar},
                      {"mass", spec.mass},
                      {"t_feature", spec.t_feature},
                      {"x_feature", spec.x_feature},
                      {"textbook_wave", spec.textbook_wave},
                      {"collocation", spec.collocation == Collocation::kGrid ? "grid" : "training_points"}}},
                    {"scaling",
                     {{"inputs", sc.input_names},
                      {"input_min", to_json(sc.input_min)},
                      {"input_max", to_json(sc.input_max)},
                      {"input_median", to_json(sc.input_median)},
                      {"target_mean", sc.target_mean},
                      {"target_std", sc.target_std}}},
                    {"network", mlp_to_json(res.net)}};
      o.files.emplace_back("model_" + algo + ".json", model.dump(2) + "\n");
      std::ostringstream hist;
      hist << "epoch,physics,data,total\n";
      for (const auto& h : res.history) {
        hist << h.epoch << ',' << num(h.physics) << ',' << num(h.data) << ',' << num(h.total) << '\n';
      }
      o.files.emplace_back("history_" + algo + ".csv", hist.str());
      std::ostringstream grid;
      grid << surf.x_name << ',' << surf.t_name << ",Predicted peak temperature (degree Celsius)\n";
      for (Eigen::Index i = 0; i < surf.values.rows(); ++i) {
        for (Eigen::Index j = 0; j < surf.values.cols(); ++j) {
          grid << num(surf.x_axis(i)) << ',' << num(surf.t_axis(j)) << ',' << num(surf.values(i, j)) << '\n';
        }
      }
      o.files.emplace_back("surface_" + algo + ".csv", grid.str());
      o.files.emplace_back("plot_contour_" + algo + ".svg", svg::contour_plot(surf, label + ": predicted peak temperature"));
      o.files.emplace_back("plot_surface_isometric_" + algo + ".svg",
                           svg::surface_isometric(surf, label + ": response surface"));
      if (test.rows() > 0) {
        o.files.emplace_back("plot_actual_vs_predicted_" + algo + ".svg",
                             svg::actual_vs_predicted(test.temperature, res.test_predictions,
                                                      label + ": actual vs predicted (test)"));
      }
      return o;
    });
  }
  const std::vector<Outcome> results = execute(tasks, opt.parallel);

  json report = report_header(cfg, "pinn", l, train, test, pc.train.inputs);
  std::ostringstream csv;
  csv << "algorithm,rmse,mae,initial_total_loss,final_total_loss,execution_seconds\n";
  for (const Outcome& o : results) {
    report["rows"].push_back(o.row);
    for (const auto& [name, content] : o.files) out.write(name, content);
    csv << o.row["algorithm"].get<std::string>() << ',' << num(o.row["test"]["rmse"]) << ','
        << num(o.row["test"]["mae"]) << ',' << num(o.row["initial_loss"]["total"]) << ','
        << num(o.row["final_loss"]["total"]) << ',' << num(o.row["execution_seconds"]) << '\n';
  }
  out.write("ingestion_pinn.log", l.log);
  out.write_json("report_pinn.json", report);
  out.write("report_pinn.csv", csv.str());
  return report;
}

json run_classification_suite(const RunConfig& cfg, OutputSink& out, const RunOptions& opt) {
  const ClassifyConfig& cc = cfg.classify;
  const Loaded l = load(cfg, "classify", cc.data);
  const auto [train, test] = data::train_test_split(l.ds, cfg.split);
  const data::ScalerParams scaler = data::fit_scaler(train.select(cc.features), cc.features);
  const Eigen::MatrixXd xtr = scaler.transform(train.select(cc.features));
  const Eigen::MatrixXd xte = scaler.transform(test.select(cc.features));
  const Eigen::VectorXi& ytr = train.quality;
  const Eigen::VectorXi& yte = test.quality;

  std::vector<Task> tasks;
  for (const std::string& algo : classification_algorithms()) {
    tasks.push_back([&, algo] {
      const std::string name = "classify_" + algo;
      const std::string& label = labels().at(algo);
      const auto t0 = std::chrono::steady_clock::now();
      const auto model = fit_classifier(algo, cc, xtr, ytr);
      const double secs = seconds_since(t0);
      const Eigen::VectorXi ltr = model->predict_labels(xtr), lte = model->predict_labels(xte);
      const Eigen::VectorXd ste = model->predict(xte);
      const ClassificationMetrics mte = classification_metrics(yte, lte, ste);
      const double train_acc =
          static_cast<double>((ltr.array() == ytr.array()).count()) / static_cast<double>(ytr.size());
      Outcome o;
      o.row = {{"algorithm", algo},
               {"label", label},
               {"train_accuracy", train_acc},
               {"test_accuracy", mte.accuracy},
               {"f1", mte.f1},
               {"f1_zero_denominator", mte.f1_zero_denominator},
               {"roc_auc", mte.roc_auc ? json(*mte.roc_auc) : json(nullptr)},
               {"confusion",
                {{"tn", mte.confusion.tn}, {"fp", mte.confusion.fp}, {"fn", mte.confusion.fn}, {"tp", mte.confusion.tp}}},
               {"execution_seconds", round4(secs)},
               {"feature_importance", importance_json(*model)},
               {"model_file", "model_" + name + ".json"},
               {"notes", json::array()}};
      if (const auto* svm = dynamic_cast<const SvmModel*>(model.get())) {
        o.row["notes"] = svm->warnings();
        o.row["n_support"] = svm->n_support();
      }
      o.files.emplace_back("model_" + name + ".json",
                           model_file(name, "classify", algo, cc.features, scaler, *model).dump(2) + "\n");
      o.files.emplace_back("plot_confusion_heatmap_" + name + ".svg",
                           svg::confusion_heatmap(mte.confusion, label + ": confusion matrix (test)"));
      if (mte.roc_auc) {
        const auto pts = roc_points(yte, ste);
        std::ostringstream roc;
        roc << "fpr,tpr\n";
        for (const auto& [f, t] : pts) roc << num(f) << ',' << num(t) << '\n';
        o.files.emplace_back("roc_" + name + ".csv", roc.str());
        o.files.emplace_back("plot_roc_" + name + ".svg", svg::roc_plot(pts, *mte.roc_auc, label + ": ROC (test)"));
      }
      if (!model->trees().empty()) {
        o.files.emplace_back("plot_feature_importance_bars_" + name + ".svg",
                             svg::feature_importance_bars(short_names(cc.features), feature_importance(*model),
                                                          label + ": feature importance"));
      }
      return o;
    });
  }
  const std::vector<Outcome> results = execute(tasks, opt.parallel);

  json report = report_header(cfg, "classify", l, train, test, cc.features);
  std::ostringstream csv;
  csv << "algorithm,train_accuracy,test_accuracy,f1,roc_auc,tn,fp,fn,tp,execution_seconds\n";
  for (const Outcome& o : results) {
    report["rows"].push_back(o.row);
    for (const auto& [name, content] : o.files) out.write(name, content);
    const json& r = o.row;
    const json& c = r["confusion"];
    csv << r["algorithm"].get<std::string>() << ',' << num(r["train_accuracy"]) << ',' << num(r["test_accuracy"])
        << ',' << num(r["f1"]) << ',' << (r["roc_auc"].is_null() ? std::string("") : num(r["roc_auc"])) << ','
        << c["tn"].get<long>() << ',' << c["fp"].get<long>() << ',' << c["fn"].get<long>() << ','
        << c["tp"].get<long>() << ',' << num(r["execution_seconds"]) << '\n';
  }
  write_split(out, "classify", train, test);
  out.write("ingestion_classify.log", l.log);
  out.write_json("report_classify.json", report);
  out.write("report_classify.csv", csv.str());
  return report;
}

json run_plots_suite(const RunConfig& cfg, OutputSink& out, const RunOptions& opt) {
  (void)opt;
  json report = {{"schema_version", kReportSchemaVersion},
                 {"suite", "plots"},
                 {"fingerprint", cfg.fingerprint()},
                 {"seed", cfg.seed},
                 {"config", cfg.effective},
                 {"rows", json::array()}};
  std::ostringstream csv;
  csv << "dataset,row,column,value\n";
  for (const auto& [key, path] : std::vector<std::pair<std::string, std::string>>{{"regress", cfg.regress.data},
                                                                                  {"classify", cfg.classify.data}}) {
    const Loaded l = load(cfg, key, path);
    const data::CorrelationMatrix corr = data::pearson_correlation_matrix(l.ds);
    const std::string name = "correlation_" + key;
    json row = {{"algorithm", name},
                {"label", "Pearson correlation (" + key + " data)"},
                {"dataset", l.label},
                {"labels", corr.labels},
                {"matrix", to_json(corr.values)},
                {"constant", corr.constant}};
    report["rows"].push_back(row);
    out.write("plot_correlation_heatmap_" + key + ".svg",
              svg::correlation_heatmap(corr, "Pearson correlation (" + key + " data)"));
    for (Eigen::Index i = 0; i < corr.values.rows(); ++i) {
      for (Eigen::Index j = 0; j < corr.values.cols(); ++j) {
        csv << key << ",\"" << corr.labels[static_cast<std::size_t>(i)] << "\",\""
            << corr.labels[static_cast<std::size_t>(j)] << "\"," << num(corr.values(i, j)) << '\n';
      }
    }
  }
  out.write_json("report_plots.json", report);
  out.write("report_plots.csv", csv.str());
  return report;
}

json run(Suite suite, const RunConfig& cfg, const std::filesystem::path& out_dir, const RunOptions& opt) {
  OutputSink out(out_dir);
  if (suite == Suite::kRegress || suite == Suite::kAll) run_regression_suite(cfg, out, opt);
  if (suite == Suite::kPinn || suite == Suite::kAll) run_pinn_suite(cfg, out, opt);
  if (suite == Suite::kClassify || suite == Suite::kAll) run_classification_suite(cfg, out, opt);
  if (suite == Suite::kPlots || suite == Suite::kAll) run_plots_suite(cfg, out, opt);

  std::vector<std::string> files = out.files();
  std::sort(files.begin(), files.end());
  const json manifest = {{"schema_version", kReportSchemaVersion},
                         {"command", suite_name(suite)},
                         {"fingerprint", cfg.fingerprint()},
                         {"seed", cfg.seed},
                         {"files", files}};
  svg::write_file(out_dir / "manifest.json", manifest.dump(2) + "\n");
  for (const auto& f : files) {
    std::error_code ec;
    if (!std::filesystem::is_regular_file(out_dir / f, ec)) {
      throw Error("manifest verification failed: " + f + " was not written");
    }
  }
  return manifest;
}

}  // namespace thermoforge::cli
