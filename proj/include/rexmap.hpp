/*
   Copyright 2026 The rexmap Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

// Umbrella header.

#ifndef REXMAP_REXMAP_HPP
#define REXMAP_REXMAP_HPP

#include "rexmap/errors.hpp"
#include "rexmap/numberfield.hpp"
#include "rexmap/pisot.hpp"
#include "rexmap/cutproject.hpp"
#include "rexmap/rectgeo.hpp"
#include "rexmap/rem.hpp"
#include "rexmap/renorm.hpp"
#include "rexmap/demgeneral.hpp"
#include "rexmap/io.hpp"

#endif
