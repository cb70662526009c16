// DOM wiring: file picker / URL loading, step rendering, back and restart.

import { WizardState, View, loadProgram, currentView, choose, enterNumber, back, restart } from './engine.js';
import { SchemaError } from './types.js';

let state: WizardState | null = null;

const root = document.getElementById('app')!;

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  className?: string,
  text?: string,
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  if (className) node.className = className;
  if (text !== undefined) node.textContent = text;
  return node;
}

function showError(message: string) {
  root.innerHTML = '';
  const banner = el('div', 'banner error', message);
  root.appendChild(banner);
  root.appendChild(renderLoader());
}

function renderLoader(): HTMLElement {
  const box = el('div', 'loader');
  box.appendChild(el('p', undefined, 'Load an exported program document (JSON):'));
  const input = el('input');
  input.type = 'file';
  input.accept = '.json,application/json';
  input.addEventListener('change', () => {
    const file = input.files && input.files[0];
    if (!file) return;
    file.text().then(loadFromText, (err) => showError(String(err)));
  });
  box.appendChild(input);
  return box;
}

function loadFromText(text: string) {
  try {
    state = loadProgram(JSON.parse(text));
  } catch (err) {
    const reason = err instanceof SchemaError ? `Invalid program document: ${err.message}` : String(err);
    showError(reason);
    return;
  }
  render();
}

function renderOutput(lines: string[]): HTMLElement {
  const panel = el('div', 'output');
  for (const line of lines) panel.appendChild(el('p', 'output-line', line));
  return panel;
}

function renderControls(): HTMLElement {
  const bar = el('div', 'controls');
  const backButton = el('button', undefined, 'Back');
  backButton.disabled = state!.history.length === 0;
  backButton.addEventListener('click', () => {
    state = back(state!);
    render();
  });
  const restartButton = el('button', undefined, 'Restart');
  restartButton.addEventListener('click', () => {
    state = restart(state!);
    render();
  });
  bar.appendChild(backButton);
  bar.appendChild(restartButton);
  return bar;
}

function renderView(view: View): HTMLElement {
  const box = el('div', 'step');
  if (view.output.length) box.appendChild(renderOutput(view.output));
  if (view.kind === 'choice') {
    box.appendChild(el('h2', 'prompt', view.prompt));
    const list = el('div', 'options');
    view.options.forEach((option, index) => {
      const button = el('button', 'option', option);
      button.addEventListener('click', () => {
        state = choose(state!, index);
        render();
      });
      list.appendChild(button);
    });
    box.appendChild(list);
  } else if (view.kind === 'number') {
    box.appendChild(el('h2', 'prompt', view.prompt));
    const form = el('form', 'number-entry');
    const input = el('input');
    input.type = 'text';
    input.inputMode = 'numeric';
    const note = el('span', 'validation', '');
    const submit = el('button', undefined, 'Answer');
    form.appendChild(input);
    form.appendChild(submit);
    form.appendChild(note);
    form.addEventListener('submit', (event) => {
      event.preventDefault();
      const value = Number(input.value.trim());
      if (!Number.isInteger(value) || input.value.trim() === '') {
        note.textContent = 'Enter a whole number.';
        return;
      }
      state = enterNumber(state!, value);
      render();
    });
    box.appendChild(form);
  } else if (view.kind === 'finished') {
    box.appendChild(el('h2', 'done', 'Finished'));
  } else {
    box.appendChild(el('h2', 'done failed', `Failed: ${view.reason}`));
  }
  return box;
}

function render() {
  root.innerHTML = '';
  if (!state) {
    root.appendChild(renderLoader());
    return;
  }
  root.appendChild(renderView(currentView(state)));
  root.appendChild(renderControls());
}

const params = new URLSearchParams(window.location.search);
const programUrl = params.get('program');
if (programUrl) {
  fetch(programUrl)
    .then((response) => {
      if (!response.ok) throw new Error(`cannot fetch ${programUrl}: ${response.status}`);
      return response.text();
    })
    .then(loadFromText, (err) => showError(String(err)));
} else {
  render();
}
