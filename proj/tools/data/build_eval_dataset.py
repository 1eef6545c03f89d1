#!/usr/bin/env python3
"""Generates the bundled synthetic evaluation dataset (60 articles, 12 categories)."""

import pathlib
import random

OUT = pathlib.Path(__file__).resolve().parents[2] / "data" / "evaluation" / "synthetic"

EDGES = [
    ("Oceanography", "Earth Science"),
    ("Geology", "Earth Science"),
    ("Atmospheric Science", "Earth Science"),
    ("Marine Biology", "Oceanography"),
    ("Marine Geology", "Oceanography"),
    ("Marine Geology", "Geology"),
    ("Marine Botany", "Marine Biology"),
    ("Cetology", "Marine Biology"),
    ("Ocean Exploration", "Marine Geology"),
    ("Volcanology", "Geology"),
    ("Seismology", "Geology"),
    ("Climatology", "Atmospheric Science"),
]

VOCAB = {
    "Earth Science": ["observation", "measurement", "region", "dataset", "field campaign", "sensor"],
    "Oceanography": ["salinity", "ocean current", "tide", "wave", "sea level", "upwelling", "estuary", "buoy",
                     "sea surface temperature"],
    "Marine Biology": ["plankton", "coral reef", "fish", "fishery", "species", "habitat", "biodiversity"],
    "Marine Botany": ["algae", "seagrass", "chlorophyll", "photosynthesis", "nutrient", "meadow"],
    "Cetology": ["whale", "migration", "population", "acoustic tag", "pod", "stranding"],
    "Marine Geology": ["seabed", "bathymetry", "continental shelf", "sediment", "basin", "core sample"],
    "Ocean Exploration": ["expedition", "submersible", "vessel", "deep trench", "sonar", "hydrothermal vent"],
    "Geology": ["rock", "mineral", "fault", "tectonics", "crust", "stratigraphy"],
    "Volcanology": ["volcano", "eruption", "magma", "lava", "ash", "caldera", "degassing"],
    "Seismology": ["earthquake", "seismic wave", "seismometer", "aftershock", "magnitude", "epicenter", "tsunami"],
    "Atmospheric Science": ["atmosphere", "wind", "cloud", "humidity", "air pressure", "aerosol"],
    "Climatology": ["climate", "drought", "greenhouse gas", "carbon cycle", "temperature", "trend"],
}

PLACES = {
    "Oceanography": ["Adriatic Sea", "Atlantic Ocean"],
    "Marine Botany": ["Venice Lagoon"],
    "Cetology": ["Mediterranean Sea"],
    "Volcanology": ["Mount Etna", "Campi Flegrei", "Vesuvius"],
    "Seismology": ["Italy", "Iceland"],
    "Climatology": ["Europe", "Arctic Ocean"],
}

SIZES = {
    "Oceanography": 5, "Marine Biology": 6, "Marine Botany": 5, "Cetology": 5, "Marine Geology": 6,
    "Ocean Exploration": 5, "Geology": 5, "Volcanology": 6, "Seismology": 6, "Atmospheric Science": 5,
    "Climatology": 6,
}

SECOND = {
    "Marine Botany": "Marine Biology",
    "Ocean Exploration": "Oceanography",
    "Volcanology": "Seismology",
    "Climatology": "Oceanography",
}

VERBS = ["shapes", "controls", "reveals", "affects", "tracks", "drives", "limits", "records"]
GENERAL = ["study", "analysis", "survey", "result", "method", "sample", "period", "series", "value"]


def parents(cat):
    return [p for c, p in EDGES if c == cat]


def sentence(rng, pool):
    a, b, c = rng.sample(pool, 3)
    verb = rng.choice(VERBS)
    g = rng.choice(GENERAL)
    return f"The {a} {verb} the {b} in this {g} of {c}."


def article(rng, cats):
    own = [w for cat in cats for w in VOCAB[cat]]
    up = [w for cat in cats for p in parents(cat) for w in VOCAB[p]]
    pool = own * 3 + up + VOCAB["Earth Science"]
    title = f"{own[0].capitalize()} and {rng.choice(own[1:])} {rng.choice(GENERAL)}"
    body = [sentence(rng, pool) for _ in range(rng.randint(6, 9))]
    places = [p for cat in cats for p in PLACES.get(cat, [])]
    if places and rng.random() < 0.6:
        body.insert(rng.randint(0, len(body)), f"Data were collected near {rng.choice(places)}.")
    return title + "\n\n" + " ".join(body) + "\n"


def main():
    rng = random.Random(42)
    (OUT / "articles").mkdir(parents=True, exist_ok=True)
    for old in (OUT / "articles").glob("*.txt"):
        old.unlink()
    with open(OUT / "categories.tsv", "w") as f:
        for child, parent in EDGES:
            f.write(f"{child}\t{parent}\n")
    n = 0
    seconded = set()
    with open(OUT / "assignments.tsv", "w") as f:
        for cat, size in SIZES.items():
            for i in range(size):
                n += 1
                aid = f"a{n:03d}"
                cats = [cat]
                if cat in SECOND and cat not in seconded:
                    cats.append(SECOND[cat])
                    seconded.add(cat)
                for c in cats:
                    f.write(f"{aid}\t{c}\n")
                (OUT / "articles" / f"{aid}.txt").write_text(article(rng, cats))


if __name__ == "__main__":
    main()
