// Copyright 2026 The fea2vr Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include "fea2vr/element_model.hpp"
#include "fea2vr/error.hpp"
#include "fea2vr/geometry.hpp"
#include "fea2vr/io_formats.hpp"
#include "fea2vr/listing_parser.hpp"
#include "fea2vr/mesh.hpp"
#include "fea2vr/mesh_pipeline.hpp"
#include "fea2vr/triangulation.hpp"
