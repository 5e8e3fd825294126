// Copyright 2026 The dppens Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef DPPENS_DPPENS_HPP
#define DPPENS_DPPENS_HPP

#include "dppens/dataset.hpp"
#include "dppens/elem_sym.hpp"
#include "dppens/errors.hpp"
#include "dppens/experiment.hpp"
#include "dppens/kernel.hpp"
#include "dppens/oracle.hpp"
#include "dppens/parallel.hpp"
#include "dppens/random.hpp"
#include "dppens/regressors.hpp"
#include "dppens/samplers.hpp"
#include "dppens/spectrum.hpp"

#endif  // DPPENS_DPPENS_HPP
