import json
import pathlib

import pytest

import dlcat

jsonschema = pytest.importorskip("jsonschema")
referencing = pytest.importorskip("referencing")

SCHEMAS = pathlib.Path(__file__).resolve().parents[2] / "docs" / "schemas"


def validator(name):
    registry = referencing.Registry()
    for path in SCHEMAS.glob("*.schema.json"):
        doc = json.loads(path.read_text())
        registry = registry.with_resource(path.name, referencing.Resource.from_contents(doc))
    schema = json.loads((SCHEMAS / name).read_text())
    return jsonschema.Draft202012Validator(schema, registry=registry)


def cli_json(*args):
    code, out, err = dlcat.run_cli(list(args))
    assert code == 0, err
    return json.loads(out)


@pytest.mark.parametrize("preset", ["A1", "A3", "G2"])
def test_kl_rows(preset):
    validator("kl-rows.schema.json").validate(cli_json("kl", "--preset", preset))


def test_certificates():
    v = validator("certificates.schema.json")
    v.validate(cli_json("dudasmalle", "--preset", "A2", "--q", "2", "--l", "7"))
    v.validate(cli_json("dudasmalle", "--preset", "A1", "--q", "3", "--l", "5", "--sqrt", "other"))


def test_n_matrix(tmp_path):
    v = validator("n-matrix.schema.json")
    good = {"entries": [{"v": "1", "w": "1-2-1", "n": 1}]}
    v.validate(good)
    path = tmp_path / "n.json"
    path.write_text(json.dumps(good))
    code, _, _ = dlcat.run_cli(["dudasmalle", "--preset", "A2", "--q", "3", "--l", "5", "--n-matrix", str(path)])
    assert code in (0, 2)
    with pytest.raises(jsonschema.ValidationError):
        v.validate({"entries": [{"v": "1", "w": "1-2-1", "n": -1}]})


def test_root_datum(tmp_path):
    v = validator("root-datum.schema.json")
    datum = {"label": "B2", "cartan": [[2, -2], [-1, 2]], "coroots": [[1, 0], [0, 1]]}
    v.validate(datum)
    g = dlcat.Group.from_json(json.dumps(datum))
    assert len(g) == 8
    path = tmp_path / "datum.json"
    path.write_text(json.dumps(datum))
    assert len(cli_json("group", "--datum", str(path))["elements"]) == 8
