#pragma once

// Umbrella header for the whole library.

#include "drift/analytics/acceleration.hpp"
#include "drift/analytics/keywords.hpp"
#include "drift/analytics/lda.hpp"
#include "drift/analytics/productivity.hpp"
#include "drift/analytics/semantic_drift.hpp"
#include "drift/analytics/track_trends.hpp"
#include "drift/analytics/word_cloud.hpp"
#include "drift/analytics/yake.hpp"
#include "drift/corpus/arxiv.hpp"
#include "drift/corpus/document.hpp"
#include "drift/corpus/json_loader.hpp"
#include "drift/corpus/lemmatizer.hpp"
#include "drift/corpus/pos_tagger.hpp"
#include "drift/corpus/preprocess.hpp"
#include "drift/corpus/slice.hpp"
#include "drift/corpus/stopwords.hpp"
#include "drift/corpus/vocabulary.hpp"
#include "drift/embedding/cbow.hpp"
#include "drift/embedding/matrix.hpp"
#include "drift/embedding/model_io.hpp"
#include "drift/embedding/random.hpp"
#include "drift/embedding/similarity.hpp"
#include "drift/embedding/temporal_model.hpp"
#include "drift/embedding/train_config.hpp"
#include "drift/embedding/trainer.hpp"
#include "drift/error.hpp"
#include "drift/hash.hpp"
#include "drift/projection/kmeans.hpp"
#include "drift/projection/pca.hpp"
#include "drift/projection/points.hpp"
#include "drift/projection/track_clusters.hpp"
#include "drift/projection/tsne.hpp"
#include "drift/service/dataset.hpp"
#include "drift/service/jobs.hpp"
#include "drift/service/json.hpp"
#include "drift/service/methods.hpp"
#include "drift/service/model_store.hpp"
#include "drift/service/render.hpp"
#include "drift/service/server.hpp"
