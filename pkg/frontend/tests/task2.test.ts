// Task 2 view: slider gating, unit conversion, 409 notice, neutral markup.

import { beforeEach, describe, expect, it, vi } from "vitest";

import { Api, ApiError } from "../src/api.js";
import { renderTask2 } from "../src/task2.js";

const TASK = {
  task: "rate" as const,
  items: [
    { id: "m1", text: "A calm serious rewrite" },
    { id: "g1", text: "Stocks rally after earnings report" },
  ],
};

function setup(apiStub: Partial<Api> = {}, onDone = vi.fn()) {
  document.body.innerHTML = "<div id='root'></div>";
  const root = document.getElementById("root") as HTMLElement;
  renderTask2(root, apiStub as Api, TASK, onDone);
  const submit = document.getElementById("submit-ratings") as HTMLButtonElement;
  const sliders = [0, 1].map((i) => document.getElementById(`slider-${i}`) as HTMLInputElement);
  const slide = (index: number, value: number) => {
    sliders[index].value = String(value);
    sliders[index].dispatchEvent(new Event("input"));
  };
  return { root, submit, sliders, slide, onDone };
}

const settle = () => new Promise((resolve) => setTimeout(resolve, 0));

describe("task 2 view", () => {
  beforeEach(() => {
    document.body.innerHTML = "";
  });

  it("renders exactly two items in the server-given order", () => {
    setup();
    const headlines = [...document.querySelectorAll("#rate-items .headline")]
      .map((node) => node.textContent);
    expect(headlines).toEqual([TASK.items[0].text, TASK.items[1].text]);
  });

  it("keeps submit disabled until both sliders are touched", () => {
    const { submit, slide } = setup();
    expect(submit.hasAttribute("disabled")).toBe(true);
    slide(0, 80);
    expect(submit.hasAttribute("disabled")).toBe(true);
    slide(1, 20);
    expect(submit.hasAttribute("disabled")).toBe(false);
  });

  it("maps slider percentages to [0, 1] payload values", async () => {
    const submitRatings = vi.fn().mockResolvedValue({ reward: 200 });
    const { submit, slide, onDone } = setup({ submitRatings } as Partial<Api>);
    slide(0, 99);
    slide(1, 1);
    submit.click();
    await settle();
    expect(submitRatings).toHaveBeenCalledWith([
      { id: "m1", value: 0.99 },
      { id: "g1", value: 0.01 },
    ]);
    expect(onDone).toHaveBeenCalledWith(200);
  });

  it("shows an already-rated notice on 409", async () => {
    const submitRatings = vi.fn().mockRejectedValue(new ApiError(409, "already rated"));
    const { submit, slide, onDone } = setup({ submitRatings } as Partial<Api>);
    slide(0, 50);
    slide(1, 50);
    submit.click();
    await settle();
    const error = document.getElementById("task2-error") as HTMLElement;
    expect(error.hasAttribute("hidden")).toBe(false);
    expect(error.textContent).toContain("Already rated");
    expect(onDone).not.toHaveBeenCalled();
  });

  it("renders both items with structurally identical markup", () => {
    setup();
    const signatures = [...document.querySelectorAll("#rate-items li")].map((li) =>
      [...li.querySelectorAll("*")]
        .map((node) => `${node.tagName}.${node.className}`)
        .join("|"),
    );
    expect(signatures[0]).toBe(signatures[1]);
  });
});
