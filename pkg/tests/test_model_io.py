import json

import numpy as np
import pytest

from augbayes.classifier import fit_parameters, predict_rows
from augbayes.errors import ModelFormatError
from augbayes.learner import learn_structure
from augbayes.model_io import FORMAT_VERSION, from_document, load_model, save_model, to_document

from helpers import random_dataset


@pytest.mark.parametrize("mode", ["naive", "tan", "abn"])
def test_round_trip_is_bit_identical(tmp_path, mode):
    ds = random_dataset(8, [2, 3, 3, 2], class_card=3, N=97)
    model = fit_parameters(learn_structure(ds, mode), ds, "laplace", 0.37)
    path = tmp_path / "m.json"
    save_model(path, model, mode=mode, weight_mode="cost", mdl=1.5)
    loaded = load_model(path)
    assert loaded.structure == model.structure
    assert np.array_equal(loaded.class_prior, model.class_prior)
    for k in model.cpts:
        assert np.array_equal(loaded.cpts[k], model.cpts[k])
    assert loaded.fit_meta == model.fit_meta
    a = predict_rows(model, ds.rows)
    b = predict_rows(loaded, ds.rows)
    assert np.array_equal(a[0], b[0]) and np.array_equal(a[1], b[1])


def test_document_layout():
    ds = random_dataset(1, [2, 2, 2], N=50)
    doc = to_document(fit_parameters(learn_structure(ds, "tan"), ds), mode="tan", weight_mode="cost", mdl=3.0)
    assert doc["format_version"] == FORMAT_VERSION
    assert doc["schema"]["class"] == "c"
    assert all(len(arc) == 2 and all(isinstance(n, str) for n in arc) for arc in doc["arcs"])
    assert doc["fit"]["log_base"] == "e"
    json.dumps(doc)


def test_version_is_checked():
    ds = random_dataset(1, [2, 2], N=20)
    doc = to_document(fit_parameters(learn_structure(ds, "naive"), ds))
    doc["format_version"] = 99
    with pytest.raises(ModelFormatError, match="format_version"):
        from_document(doc)
    del doc["format_version"]
    with pytest.raises(ModelFormatError):
        from_document(doc)


@pytest.mark.parametrize(
    "mutate",
    [
        lambda d: d["cpts"]["x1"].update(table=[[[1.0]]]),
        lambda d: d.update(arcs=[["x1", "c"]]),
        lambda d: d.update(class_prior=[1.0]),
        lambda d: d["cpts"].pop("x2"),
        lambda d: d["cpts"]["x2"].update(parent="x1"),
    ],
)
def test_malformed_documents(mutate):
    ds = random_dataset(1, [2, 2], N=20)
    doc = to_document(fit_parameters(learn_structure(ds, "naive"), ds))
    mutate(doc)
    with pytest.raises(ModelFormatError):
        from_document(doc)


def test_invalid_json(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text("{nope")
    with pytest.raises(ModelFormatError):
        load_model(path)
