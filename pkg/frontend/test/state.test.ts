// @vitest-environment node
import { describe, expect, it } from "vitest";

import { searchParams } from "../src/api.js";
import {
  StateStore,
  defaultState,
  fromFragment,
  toFragment,
} from "../src/state.js";
import type { QueryState } from "../src/state.js";

function sample(): QueryState {
  return {
    q: "cholera wells",
    keywords: ["D0002", "M0002"],
    geoId: 2,
    dateFrom: "2026-03-01",
    dateTo: "2026-03-02",
    statuses: ["published", "triage"],
    page: 3,
    pageSize: 50,
    barMode: "locations",
    tab: "graph",
    selectedDoc: "abc123",
  };
}

describe("query state fragment", () => {
  it("round-trips every field through the fragment", () => {
    const qs = sample();
    expect(fromFragment(toFragment(qs))).toEqual(qs);
  });

  it("serializes the default state to an empty fragment", () => {
    expect(toFragment(defaultState())).toBe("");
    expect(fromFragment("")).toEqual(defaultState());
  });

  it("accepts a leading hash mark", () => {
    const qs = sample();
    expect(fromFragment(`#${toFragment(qs)}`)).toEqual(qs);
  });

  it("drops malformed numbers and unknown modes instead of breaking", () => {
    const qs = fromFragment("geo=abc&page=0&size=-2&mode=pie&tab=nowhere");
    expect(qs).toEqual(defaultState());
  });

  it("keeps multi-valued filters ordered", () => {
    const qs = sample();
    const back = fromFragment(toFragment(qs));
    expect(back.keywords).toEqual(["D0002", "M0002"]);
    expect(back.statuses).toEqual(["published", "triage"]);
  });

  it("restored state issues the identical search request", () => {
    const qs = sample();
    const restored = fromFragment(toFragment(qs));
    expect(searchParams(restored).toString()).toBe(searchParams(qs).toString());
  });
});

describe("state store", () => {
  it("notifies subscribers once per update with the merged state", () => {
    const store = new StateStore();
    const seen: QueryState[] = [];
    store.subscribe((qs) => seen.push(qs));
    store.update({ q: "measles" });
    store.update({ geoId: 4 });
    expect(seen).toHaveLength(2);
    expect(seen[1].q).toBe("measles");
    expect(seen[1].geoId).toBe(4);
  });

  it("unsubscribe stops further notifications", () => {
    const store = new StateStore();
    let calls = 0;
    const off = store.subscribe(() => {
      calls += 1;
    });
    store.update({ page: 2 });
    off();
    store.update({ page: 3 });
    expect(calls).toBe(1);
  });
});
