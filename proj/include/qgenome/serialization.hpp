#pragma once

// JSON forms of configs, models and preprocessing state. Reals are written
// in shortest round-trip form, so reading a file back reproduces every
// double bit for bit.

#include "qgenome/feature_map.hpp"
#include "qgenome/metrics.hpp"
#include "qgenome/pegasos.hpp"
#include "qgenome/pipeline.hpp"
#include "qgenome/smo.hpp"
#include "qgenome/variational.hpp"

#include <Eigen/Core>
#include <json.hpp>

namespace qgenome {

using Json = nlohmann::json;

Json vector_to_json(const Eigen::Ref<const Eigen::VectorXd> &v);
Eigen::VectorXd vector_from_json(const Json &j);
// array of rows
Json matrix_to_json(const Eigen::Ref<const Eigen::MatrixXd> &M);
Eigen::MatrixXd matrix_from_json(const Json &j, Eigen::Index expected_cols = -1);

void to_json(Json &j, const FeatureMapConfig &c);
void from_json(const Json &j, FeatureMapConfig &c);
void to_json(Json &j, const AnsatzConfig &c);
void from_json(const Json &j, AnsatzConfig &c);

void to_json(Json &j, const QsvcModel &m);
void from_json(const Json &j, QsvcModel &m);
void to_json(Json &j, const PegasosModel &m);
void from_json(const Json &j, PegasosModel &m);
void to_json(Json &j, const VariationalModel &m);
void from_json(const Json &j, VariationalModel &m);

void to_json(Json &j, const PcaModel &m);
void from_json(const Json &j, PcaModel &m);
void to_json(Json &j, const AngleScaler &s);
void from_json(const Json &j, AngleScaler &s);
void to_json(Json &j, const FittedPipeline &p);
void from_json(const Json &j, FittedPipeline &p);

void to_json(Json &j, const MetricsReport &r);
void to_json(Json &j, const ConfusionCounts &c);

}  // namespace qgenome
