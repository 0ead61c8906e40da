"""Deterministic synthetic datasets for demos and tests.

Three small tables with recognizable shapes — a cars table (five measures,
five dimensions), a college table (ten measures, six dimensions, with a
funding split that cleanly separates cost-vs-SAT clusters), and an olympic
medals table (three measures, twelve dimensions) — plus a wide 16-column
table for throughput checks. Everything is seeded, so repeated calls
produce identical bytes.
"""
from __future__ import annotations

import csv
import io

import numpy as np

from .dataset import Dataset, from_columns, load_csv

US_BRANDS = ["Ford", "Chevrolet", "Plymouth"]
EU_BRANDS = ["Volkswagen", "Peugeot", "Fiat"]
JP_BRANDS = ["Toyota", "Datsun"]

REGIONS = [
    "New England",
    "Mid-Atlantic",
    "Southeast",
    "Midwest",
    "Southwest",
    "Mountain",
    "Pacific",
    "Noncontiguous",
]

CONTINENTS = ["Europe", "Asia", "Americas", "Africa", "Oceania"]
CONTINENT_WEIGHTS = [0.42, 0.22, 0.2, 0.09, 0.07]
COUNTRIES = {
    "Europe": ["Russia", "Germany", "France", "Italy", "Norway", "Sweden", "Hungary", "Netherlands"],
    "Asia": ["China", "Japan", "South Korea", "Kazakhstan", "India"],
    "Americas": ["USA", "Canada", "Brazil", "Cuba", "Jamaica"],
    "Africa": ["Kenya", "Ethiopia", "South Africa"],
    "Oceania": ["Australia", "New Zealand", "Fiji"],
}
GAMES = [
    ("1988-01-01", "Seoul", "Asia"),
    ("1992-01-01", "Barcelona", "Europe"),
    ("1996-01-01", "Atlanta", "Americas"),
    ("2000-01-01", "Sydney", "Oceania"),
    ("2004-01-01", "Athens", "Europe"),
    ("2008-01-01", "Beijing", "Asia"),
    ("2012-01-01", "London", "Europe"),
    ("2016-01-01", "Rio", "Americas"),
]
SPORTS = [
    "Athletics", "Swimming", "Gymnastics", "Rowing", "Cycling", "Fencing",
    "Wrestling", "Boxing", "Judo", "Shooting", "Sailing", "Canoeing",
    "Weightlifting", "Archery", "Skiing", "Skating", "Biathlon", "Hockey",
]


def cars_table(rows: int = 400, seed: int = 11) -> dict[str, list]:
    """Car specs: engine size drives power and weight, which drive economy."""
    rng = np.random.default_rng(seed)
    cylinders = rng.choice([3, 4, 5, 6, 8], size=rows, p=[0.02, 0.50, 0.03, 0.25, 0.20])
    origin_idx = np.where(
        cylinders >= 6,
        rng.choice([0, 1, 2], size=rows, p=[0.75, 0.15, 0.10]),
        rng.choice([0, 1, 2], size=rows, p=[0.35, 0.35, 0.30]),
    )
    origin = np.array(["USA", "Europe", "Japan"])[origin_idx]
    year_offset = rng.integers(0, 13, size=rows)

    displacement = cylinders * 35.0 + rng.normal(0.0, 18.0, rows)
    horsepower = 18.0 + 0.42 * displacement + rng.normal(0.0, 9.0, rows)
    weight = 1500.0 + 5.5 * displacement + rng.normal(0.0, 160.0, rows)
    mpg = 52.0 - 0.0082 * weight + 0.45 * year_offset + rng.normal(0.0, 2.2, rows)
    accel = 26.0 - 0.06 * horsepower + rng.normal(0.0, 1.4, rows)

    brands = []
    for o in origin:
        pool = {"USA": US_BRANDS, "Europe": EU_BRANDS, "Japan": JP_BRANDS}[o]
        brands.append(pool[rng.integers(0, len(pool))])
    body = rng.choice(["Sedan", "Coupe", "Wagon", "Hatchback"], size=rows,
                      p=[0.45, 0.25, 0.15, 0.15])

    return {
        "MPG": np.round(np.clip(mpg, 8, 48), 1).tolist(),
        "Cylinders": cylinders.tolist(),
        "Displacement": np.round(displacement).astype(int).tolist(),
        "Horsepower": np.round(horsepower).astype(int).tolist(),
        "Weight": np.round(weight).astype(int).tolist(),
        "Acceleration": np.round(np.clip(accel, 7, 26), 1).tolist(),
        "Origin": origin.tolist(),
        "Year": [f"{1970 + off}-01-01" for off in year_offset],
        "Brand": brands,
        "BodyStyle": body.tolist(),
    }


def college_table(rows: int = 600, seed: int = 7) -> dict[str, list]:
    """College profiles with a private/public cost split.

    Private schools charge far more at a given SAT level, so the cost-vs-SAT
    scatter splits into two well-separated bands when colored by funding.
    """
    rng = np.random.default_rng(seed)
    private = rng.random(rows) < 0.48
    funding = np.where(private, "Private", "Public")

    sat = rng.normal(1080.0, 115.0, rows) + np.where(private, 30.0, 0.0)
    sat = np.clip(np.round(sat), 720, 1520)
    cost = np.where(
        private,
        34000.0 + 21.0 * (sat - 700.0) + rng.normal(0.0, 2600.0, rows),
        15000.0 + 14.0 * (sat - 700.0) + rng.normal(0.0, 2000.0, rows),
    )
    act = np.clip(np.round(0.0355 * sat - 4.2 + rng.normal(0.0, 0.8, rows)), 14, 36)
    admission = np.clip(1.18 - 0.00058 * sat + rng.normal(0.0, 0.07, rows), 0.04, 0.99)
    population = np.exp(rng.normal(8.0, 0.7, rows)) * np.where(private, 1.0, 2.3)
    ratio = np.where(
        private,
        rng.normal(11.5, 2.8, rows),
        rng.normal(18.5, 3.5, rows),
    )
    earnings = 18000.0 + 24.0 * sat + rng.normal(0.0, 4500.0, rows)
    completion = np.clip(
        0.0006 * sat - 0.23 + np.where(private, 0.08, 0.0) + rng.normal(0.0, 0.08, rows),
        0.05,
        0.98,
    )
    debt = 8000.0 + 0.28 * cost + rng.normal(0.0, 2500.0, rows)
    spend = 3000.0 + 0.55 * cost + rng.normal(0.0, 3000.0, rows)

    tier_noise = admission + rng.normal(0.0, 0.18, rows)
    tier = np.where(tier_noise < 0.35, "MostSelective",
                    np.where(tier_noise < 0.6, "Selective", "Open"))
    degree = rng.choice(
        ["Graduate", "Bachelor", "Associate", "Certificate"], size=rows,
        p=[0.45, 0.30, 0.15, 0.10],
    )
    locale = rng.choice(["City", "Suburb", "Town", "Rural"], size=rows,
                        p=[0.40, 0.30, 0.15, 0.15])
    housing = rng.choice(["Yes", "No"], size=rows, p=[0.6, 0.4])
    region = rng.choice(REGIONS, size=rows)

    return {
        "SATAverage": sat.astype(int).tolist(),
        "ACTMedian": act.astype(int).tolist(),
        "AverageCost": np.round(cost).astype(int).tolist(),
        "AdmissionRate": np.round(admission, 2).tolist(),
        "UndergradPopulation": np.round(population).astype(int).tolist(),
        "StudentFacultyRatio": np.round(np.clip(ratio, 4, 30), 1).tolist(),
        "MedianEarnings": np.round(earnings).astype(int).tolist(),
        "CompletionRate": np.round(completion, 2).tolist(),
        "AverageDebt": np.round(debt).astype(int).tolist(),
        "ExpenditurePerStudent": np.round(spend).astype(int).tolist(),
        "FundingModel": funding.tolist(),
        "Region": region.tolist(),
        "HighestDegree": degree.tolist(),
        "Locale": locale.tolist(),
        "SelectivityTier": tier.tolist(),
        "CampusHousing": housing.tolist(),
    }


def medals_table(rows: int = 800, seed: int = 3) -> dict[str, list]:
    """Olympic medalists: few measures, many dimensions, Europe on top."""
    rng = np.random.default_rng(seed)
    cont_idx = rng.choice(len(CONTINENTS), size=rows, p=CONTINENT_WEIGHTS)
    continent = [CONTINENTS[i] for i in cont_idx]
    country = [
        COUNTRIES[c][rng.integers(0, len(COUNTRIES[c]))] for c in continent
    ]
    game_idx = rng.integers(0, len(GAMES), size=rows)
    year = [GAMES[i][0] for i in game_idx]
    city = [GAMES[i][1] for i in game_idx]
    host = [GAMES[i][2] for i in game_idx]

    sport_idx = rng.integers(0, len(SPORTS), size=rows)
    sport = [SPORTS[i] for i in sport_idx]
    discipline = [
        f"{SPORTS[i]} {'I' * (1 + int(d))}" for i, d in zip(sport_idx, rng.integers(0, 2, rows))
    ]
    event = [f"Event-{n:02d}" for n in rng.integers(0, 40, size=rows)]
    gender = rng.choice(["Men", "Women"], size=rows, p=[0.55, 0.45])
    season = rng.choice(["Summer", "Winter"], size=rows, p=[0.8, 0.2])
    medal = rng.choice(["Gold", "Silver", "Bronze"], size=rows)
    team = rng.choice(["Individual", "Team"], size=rows, p=[0.7, 0.3])

    # Italy skews old; a visible outlier for value-swap browsing.
    age = rng.normal(26.0, 4.0, rows) + np.where(np.array(country) == "Italy", 7.0, 0.0)
    height = rng.normal(176.0, 9.0, rows) - np.where(gender == "Women", 9.0, 0.0)
    weight = height - 105.0 + rng.normal(0.0, 8.0, rows)

    return {
        "Age": np.clip(np.round(age), 14, 48).astype(int).tolist(),
        "Height": np.round(height).astype(int).tolist(),
        "BodyWeight": np.round(weight).astype(int).tolist(),
        "Country": country,
        "Continent": continent,
        "Sport": sport,
        "Discipline": discipline,
        "Event": event,
        "Gender": gender.tolist(),
        "Season": season.tolist(),
        "Year": year,
        "City": city,
        "MedalType": medal.tolist(),
        "Team": team.tolist(),
        "HostContinent": host,
    }


def wide_table(rows: int = 50_000, seed: int = 5) -> dict[str, list]:
    """16 columns (8 measures, 8 dimensions) for throughput measurements."""
    rng = np.random.default_rng(seed)
    base = rng.normal(0.0, 1.0, rows)
    table: dict[str, list] = {}
    table["m0"] = np.round(base * 10 + 50, 3).tolist()
    table["m1"] = np.round(0.8 * base * 10 + 50 + rng.normal(0, 4, rows), 3).tolist()
    table["m2"] = np.round(np.exp(rng.normal(0.0, 0.6, rows)) * 20, 3).tolist()
    for i in range(3, 8):
        table[f"m{i}"] = np.round(rng.normal(i * 10.0, 5.0, rows), 3).tolist()
    cards = [4, 6, 8, 10, 12, 5, 3, 7]
    for i, card in enumerate(cards):
        codes = rng.integers(0, card, size=rows)
        table[f"d{i}"] = [f"g{i}_{c}" for c in codes]
    return table


def to_csv_bytes(table: dict[str, list]) -> bytes:
    """Serialize a column dict to UTF-8 CSV with a header row."""
    buffer = io.StringIO()
    writer = csv.writer(buffer)
    names = list(table)
    writer.writerow(names)
    for row in zip(*(table[n] for n in names)):
        writer.writerow(row)
    return buffer.getvalue().encode("utf-8")


def cars_csv_bytes(rows: int = 400, seed: int = 11) -> bytes:
    return to_csv_bytes(cars_table(rows, seed))


def college_csv_bytes(rows: int = 600, seed: int = 7) -> bytes:
    return to_csv_bytes(college_table(rows, seed))


def medals_csv_bytes(rows: int = 800, seed: int = 3) -> bytes:
    return to_csv_bytes(medals_table(rows, seed))


def load_cars(rows: int = 400, seed: int = 11) -> Dataset:
    return load_csv(cars_csv_bytes(rows, seed), name="cars")


def load_college(rows: int = 600, seed: int = 7) -> Dataset:
    return load_csv(college_csv_bytes(rows, seed), name="college")


def load_medals(rows: int = 800, seed: int = 3) -> Dataset:
    return load_csv(medals_csv_bytes(rows, seed), name="medals")


def load_wide(rows: int = 50_000, seed: int = 5) -> Dataset:
    # Built straight from columns; the CSV round-trip is exercised elsewhere.
    return from_columns("wide", wide_table(rows, seed))


BUILTIN_LOADERS = {
    "cars": load_cars,
    "college": load_college,
    "medals": load_medals,
}
