// Copyright 2026 The apisum Authors.
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

// Convenience header pulling in the whole library.

#ifndef APISUM_APISUM_HPP_
#define APISUM_APISUM_HPP_

#include "apisum/abstractive.hpp"
#include "apisum/corpus.hpp"
#include "apisum/error.hpp"
#include "apisum/fixtures.hpp"
#include "apisum/ingest.hpp"
#include "apisum/metrics.hpp"
#include "apisum/pipeline.hpp"
#include "apisum/preprocess.hpp"
#include "apisum/stats.hpp"
#include "apisum/summary.hpp"
#include "apisum/text_util.hpp"
#include "apisum/textrank.hpp"

#endif  // APISUM_APISUM_HPP_
