// Copyright 2026 The shgaunt Authors
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

#pragma once

#include "shgaunt/sh_core.hpp"
#include "shgaunt/basis_maps.hpp"
#include "shgaunt/quadrature.hpp"
#include "shgaunt/parallel.hpp"
#include "shgaunt/gaunt.hpp"
#include "shgaunt/table_io.hpp"
#include "shgaunt/acoustics.hpp"
#include "shgaunt/verify.hpp"
