export * from './stl10';
export * from './augment';
export * from './synth';
export * from './plot';
export * from './demoTrain';
